#include "einlike/manifest.hpp"

#include "einlike/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace einlike {

using nlohmann::json;

const char* manifest_kind_name(ManifestKind k) {
    switch (k) {
        case ManifestKind::plain_metric: return "plain_metric";
        case ManifestKind::doubly_warped: return "doubly_warped";
        case ManifestKind::spacetime: return "spacetime";
    }
    return "?";
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const MetricField& Manifest::chart_metric() const {
    if (metric) return *metric;
    if (product) return product->assembled;
    throw Error("manifest holds no metric");
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw InputError("manifest: " + path + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path, std::string("missing required field '") + key + "'");
    return *it;
}

std::string require_string(const json& obj, const char* key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

std::vector<std::string> parse_coords(const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of coordinate names");
    std::vector<std::string> coords;
    for (const json& c : v) {
        if (!c.is_string()) fail(path, "coordinate names must be strings");
        coords.push_back(c.get<std::string>());
    }
    return coords;
}

ScalarExpr parse_expr_field(const json& v, const std::vector<std::string>& coords,
                            const std::string& path) {
    if (!v.is_string()) fail(path, "expected an expression string");
    try {
        return ScalarExpr::parse(v.get<std::string>(), coords);
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

MetricField parse_metric(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected a metric object");
    const std::vector<std::string> coords = parse_coords(require(obj, "coords", path), path + ".coords");
    const std::size_t n = coords.size();

    Signature sig = Signature::riemannian;
    if (auto it = obj.find("signature"); it != obj.end()) {
        const std::string s = it->is_string() ? it->get<std::string>() : std::string();
        const auto parsed = signature_from_name(s);
        if (!parsed) fail(path + ".signature", "expected \"riemannian\" or \"lorentzian\"");
        sig = *parsed;
    }

    const json& comp = require(obj, "components", path);
    if (!comp.is_array() || comp.size() != n)
        fail(path + ".components", "expected an " + std::to_string(n) + " x " + std::to_string(n) +
                                       " array of expression strings");
    for (const json& row : comp)
        if (!row.is_array() || row.size() != n)
            fail(path + ".components", "expected square rows of length " + std::to_string(n));

    // read the upper triangle; a textually different lower triangle is an error
    std::vector<ScalarExpr> upper;
    upper.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const std::string cell = path + ".components[" + std::to_string(i) + "][" +
                                     std::to_string(j) + "]";
            upper.push_back(parse_expr_field(comp[i][j], coords, cell));
            if (i != j && comp[j][i] != comp[i][j])
                fail(path + ".components", "component (" + std::to_string(j) + "," +
                                               std::to_string(i) + ") differs from its mirror");
        }
    try {
        return MetricField(coords, std::move(upper), sig);
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

FactorSpec parse_factor(const json& obj, const char* key, const std::string& path) {
    const json& f = require(obj, key, path);
    const std::string fpath = path + "." + key;
    MetricField metric = parse_metric(f, fpath);
    std::string name = f.contains("name") ? f["name"].get<std::string>() : std::string(key);
    ScalarExpr warping =
        parse_expr_field(require(f, "warping", fpath), metric.coord_names(), fpath + ".warping");
    return FactorSpec{std::move(name), std::move(metric), std::move(warping)};
}

SamplingSpec parse_sampling(const json& obj, const std::string& path) {
    SamplingSpec s;
    if (!obj.is_object()) fail(path, "expected a sampling object");
    const std::string mode = require_string(obj, "mode", path);
    if (mode == "random")
        s.mode = SampleMode::random;
    else if (mode == "grid")
        s.mode = SampleMode::grid;
    else
        fail(path + ".mode", "expected \"random\" or \"grid\"");

    const json& count = require(obj, "count", path);
    if (!count.is_number_integer() || count.get<int>() < 1)
        fail(path + ".count", "expected a positive integer");
    s.count = count.get<int>();

    if (s.mode == SampleMode::random) {
        const json& seed = require(obj, "seed", path);  // reproducibility is not optional
        if (!seed.is_number_unsigned() && !seed.is_number_integer())
            fail(path + ".seed", "expected an integer seed");
        s.seed = seed.get<std::uint64_t>();
    } else if (obj.contains("seed")) {
        s.seed = obj["seed"].get<std::uint64_t>();
    }

    const json& ranges = require(obj, "ranges", path);
    if (!ranges.is_object()) fail(path + ".ranges", "expected an object of [lo, hi] pairs");
    for (auto it = ranges.begin(); it != ranges.end(); ++it) {
        const json& r = it.value();
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
            fail(path + ".ranges." + it.key(), "expected [lo, hi]");
        s.ranges.emplace_back(it.key(), std::array<double, 2>{r[0].get<double>(), r[1].get<double>()});
    }
    return s;
}

} // namespace

Manifest parse_manifest(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("manifest: JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("manifest: top level must be an object");

    Manifest m;
    m.digest = fnv1a_hex(json_text);
    m.name = doc.contains("name") ? doc["name"].get<std::string>() : "unnamed";

    const std::string kind = require_string(doc, "kind", "manifest");
    if (kind == "plain_metric") {
        m.kind = ManifestKind::plain_metric;
        m.metric = parse_metric(require(doc, "metric", "manifest"), "metric");
    } else if (kind == "doubly_warped") {
        m.kind = ManifestKind::doubly_warped;
        FactorSpec f1 = parse_factor(doc, "factor1", "manifest");
        FactorSpec f2 = parse_factor(doc, "factor2", "manifest");
        try {
            m.product = build_doubly_warped(std::move(f1), std::move(f2));
        } catch (const Error& e) {
            throw InputError(std::string("manifest: ") + e.what());
        }
    } else if (kind == "spacetime") {
        m.kind = ManifestKind::spacetime;
        MetricField base = parse_metric(require(doc, "base", "manifest"), "base");
        std::string time_coord =
            doc.contains("time_coord") ? doc["time_coord"].get<std::string>() : "t";
        ScalarExpr sigma = parse_expr_field(require(doc, "sigma", "manifest"), {time_coord}, "sigma");
        ScalarExpr f = parse_expr_field(require(doc, "f", "manifest"), base.coord_names(), "f");
        m.spacetime = SpacetimeSpec{std::move(sigma), std::move(base), std::move(f)};
        try {
            m.product = spacetime_as_product(*m.spacetime);
        } catch (const Error& e) {
            throw InputError(std::string("manifest: ") + e.what());
        }
    } else {
        fail("kind", "expected \"plain_metric\", \"doubly_warped\", or \"spacetime\"");
    }

    if (doc.contains("conformal_factor"))
        m.conformal_factor = parse_expr_field(doc["conformal_factor"],
                                              m.chart_metric().coord_names(), "conformal_factor");

    m.sampling = parse_sampling(require(doc, "sampling", "manifest"), "sampling");
    // every chart coordinate needs a range; validate eagerly for a good error
    for (const std::string& c : m.chart_metric().coord_names()) {
        bool found = false;
        for (const auto& [name, range] : m.sampling.ranges) found = found || name == c;
        if (!found) fail("sampling.ranges", "missing range for coordinate '" + c + "'");
    }

    if (doc.contains("tolerances")) {
        const json& tol = doc["tolerances"];
        if (!tol.is_object()) fail("tolerances", "expected an object");
        if (tol.contains("atol")) m.tolerances.atol = tol["atol"].get<double>();
        if (tol.contains("rtol")) m.tolerances.rtol = tol["rtol"].get<double>();
    }
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open manifest file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

} // namespace einlike
