#include "einlike/errors.hpp"
#include "einlike/manifest.hpp"
#include "einlike/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace einlike;

namespace {

std::string fixtures_dir() {
    const char* env = std::getenv("EINLIKE_FIXTURES");
    return env ? env : "fixtures";
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("fixture manifests load and identify themselves") {
    const Manifest sphere = load_manifest(fixtures_dir() + "/sphere2.json");
    CHECK(sphere.kind == ManifestKind::plain_metric);
    CHECK(sphere.name == "unit-2-sphere");
    CHECK(sphere.chart_metric().dim() == 2);
    CHECK(sphere.sampling.mode == SampleMode::random);
    CHECK(sphere.sampling.seed == 42);
    CHECK(sphere.tolerances.atol == doctest::Approx(1e-9));

    const Manifest dwp = load_manifest(fixtures_dir() + "/dwp_generic_1.json");
    CHECK(dwp.kind == ManifestKind::doubly_warped);
    CHECK(dwp.product.has_value());
    CHECK(dwp.product->dim() == 4);

    const Manifest grw = load_manifest(fixtures_dir() + "/grw_desitter.json");
    CHECK(grw.kind == ManifestKind::spacetime);
    CHECK(grw.spacetime.has_value());
    CHECK(grw.chart_metric().signature() == Signature::lorentzian);
}

TEST_CASE("digest is stable and sensitive to content") {
    const std::string text = slurp(fixtures_dir() + "/sphere2.json");
    const Manifest a = parse_manifest(text);
    const Manifest b = parse_manifest(text);
    CHECK(a.digest == b.digest);
    CHECK(a.digest.size() == 16);
    const Manifest c = parse_manifest(text + " ");
    CHECK(c.digest != a.digest);
}

TEST_CASE("manifest validation errors carry field paths") {
    auto expect_error = [](const std::string& json, const std::string& needle) {
        try {
            parse_manifest(json);
            FAIL("expected an InputError for: ", needle);
        } catch (const InputError& e) {
            INFO("message: ", e.what());
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    expect_error(R"({"sampling": {}})", "kind");
    expect_error(R"({"kind": "nope"})", "kind");
    expect_error(R"({"kind": "plain_metric"})", "metric");
    expect_error(
        R"({"kind": "plain_metric", "metric": {"coords": ["x"], "components": [["x +"]]},
            "sampling": {"mode": "grid", "count": 4, "ranges": {"x": [0, 1]}}})",
        "components");
    expect_error(
        R"({"kind": "plain_metric",
            "metric": {"coords": ["x", "y"], "components": [["1", "x"], ["y", "1"]]},
            "sampling": {"mode": "grid", "count": 4, "ranges": {"x": [0,1], "y": [0,1]}}})",
        "mirror");
    expect_error(
        R"({"kind": "plain_metric", "metric": {"coords": ["x"], "components": [["1"]]},
            "sampling": {"mode": "random", "count": 4, "ranges": {"x": [0, 1]}}})",
        "seed");
    expect_error(
        R"({"kind": "plain_metric", "metric": {"coords": ["x"], "components": [["1"]]},
            "sampling": {"mode": "grid", "count": 4, "ranges": {}}})",
        "range");
}

TEST_CASE("grid sampling shrinks away from the boundaries") {
    SamplingSpec spec;
    spec.mode = SampleMode::grid;
    spec.count = 9;
    spec.ranges = {{"x", {0.0, 1.0}}, {"y", {-1.0, 1.0}}};
    const std::vector<std::string> order{"x", "y"};
    const auto points = draw_samples(spec, order);
    CHECK(points.size() == 9);
    for (const auto& p : points) {
        CHECK(p[0] >= 0.05);
        CHECK(p[0] <= 0.95);
        CHECK(p[1] >= -0.9);
        CHECK(p[1] <= 0.9);
    }
}

TEST_CASE("random sampling is reproducible from the seed") {
    SamplingSpec spec;
    spec.mode = SampleMode::random;
    spec.count = 5;
    spec.seed = 7;
    spec.ranges = {{"x", {0.0, 2.0}}};
    const std::vector<std::string> order{"x"};
    const auto a = draw_samples(spec, order);
    const auto b = draw_samples(spec, order);
    CHECK(a == b);
    spec.seed = 8;
    CHECK(draw_samples(spec, order) != a);
}

TEST_CASE("run_command renders deterministic reports") {
    const Manifest m = load_manifest(fixtures_dir() + "/sphere2.json");
    RunOptions opt;
    opt.command = Command::classify;
    const RunReport r1 = run_command(m, opt);
    const RunReport r2 = run_command(m, opt);
    CHECK(render_json(r1) == render_json(r2));
    CHECK(render_text(r1) == render_text(r2));
    CHECK(r1.status == 0);
    CHECK(r1.classification.has_value());
    CHECK(r1.classification->finest_class == "P");
}

TEST_CASE("theorems command rejects plain metrics") {
    const Manifest m = load_manifest(fixtures_dir() + "/sphere2.json");
    RunOptions opt;
    opt.command = Command::theorems;
    CHECK_THROWS_AS(run_command(m, opt), InputError);
}
