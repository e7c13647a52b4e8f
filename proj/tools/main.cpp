#include "einlike/errors.hpp"
#include "einlike/report.hpp"
#include "einlike/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace einlike;

int main(int argc, char** argv) {
    CLI::App app{"Doubly warped product curvature engine and Einstein-like classifier"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    std::string manifest_path;
    std::string out_path;
    std::string format = "text";
    double atol = -1.0, rtol = -1.0;
    int samples = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--manifest", manifest_path, "Path to the manifest JSON")->required();
        cmd->add_option("--out", out_path, "Output path (default: stdout)");
        cmd->add_option("--format", format, "Output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--atol", atol, "Override the manifest's absolute tolerance");
        cmd->add_option("--rtol", rtol, "Override the manifest's relative tolerance");
        cmd->add_option("--samples", samples, "Override the manifest's sample count");
        cmd->add_option("--seed", seed, "Override the manifest's sampling seed")
            ->each([&](const std::string&) { seed_set = true; });
    };

    add_common(app.add_subcommand("classify", "Gray-class membership report"));
    add_common(app.add_subcommand("verify",
                                  "Residual tables for the block-formula and identity checks"));
    add_common(app.add_subcommand("theorems", "Residual tables for the inheritance theorems"));
    add_common(app.add_subcommand("report", "Everything: verify + theorems + classify"));

    CLI11_PARSE(app, argc, argv);

    RunOptions options;
    options.command = *command_from_name(app.get_subcommands().front()->get_name());
    if (atol >= 0.0) options.atol = atol;
    if (rtol >= 0.0) options.rtol = rtol;
    if (samples > 0) options.samples = samples;
    if (seed_set) options.seed = seed;

    try {
        const Manifest manifest = load_manifest(manifest_path);
        const RunReport result = run_command(manifest, options);
        const std::string rendered = format == "json" ? render_json(result) : render_text(result);
        if (out_path.empty()) {
            std::cout << rendered;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot open output file '" << out_path << "'\n";
                return 2;
            }
            out << rendered;
        }
        return result.status;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
