#pragma once

#include "einlike/manifest.hpp"

#include <optional>
#include <string>
#include <vector>

namespace einlike {

enum class Command { classify, verify, theorems, report };

std::optional<Command> command_from_name(std::string_view name);
const char* command_name(Command c);

struct RunOptions {
    Command command = Command::report;
    std::optional<double> atol;
    std::optional<double> rtol;
    std::optional<int> samples;
    std::optional<std::uint64_t> seed;
};

/// One row of a residual table. Gated rows decide the exit status; reported
/// rows carry findings (alternate display forms, sign diagnostics) that are
/// informational by design.
struct CheckRow {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool gated = true;
    bool passed = true;  // meaningful when gated
    std::string note;

    std::string verdict() const { return gated ? (passed ? "pass" : "fail") : "reported"; }
};

struct RunReport {
    std::string command;
    std::string manifest_name;
    std::string manifest_digest;
    std::string kind;
    std::size_t sample_count = 0;
    std::string sample_mode;
    std::uint64_t seed = 0;
    double atol = 0.0;
    double rtol = 0.0;
    std::vector<CheckRow> checks;
    std::optional<GrayClassReport> classification;
    int status = 0;  // 0 pass, 1 gated residual failure
};

/// Execute a command against a manifest. Throws einlike::Error subclasses for
/// input and evaluation failures (CLI exit status 2).
RunReport run_command(const Manifest& manifest, const RunOptions& options);

/// Deterministic renderings; JSON numbers use 17 significant digits.
std::string render_json(const RunReport& report);
std::string render_text(const RunReport& report);

} // namespace einlike
