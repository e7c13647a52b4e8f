#include "einlike/metric.hpp"

#include "einlike/errors.hpp"

#include <cmath>
#include <sstream>

namespace einlike {

const char* signature_name(Signature s) {
    return s == Signature::riemannian ? "riemannian" : "lorentzian";
}

std::optional<Signature> signature_from_name(std::string_view name) {
    if (name == "riemannian") return Signature::riemannian;
    if (name == "lorentzian") return Signature::lorentzian;
    return std::nullopt;
}

MetricField::MetricField(std::vector<std::string> coord_names, std::vector<ScalarExpr> upper,
                         Signature signature)
    : coord_names_(std::move(coord_names)), upper_(std::move(upper)), signature_(signature) {
    validate_coord_names(coord_names_);
    const std::size_t n = coord_names_.size();
    if (upper_.size() != n * (n + 1) / 2)
        throw InputError("metric component count " + std::to_string(upper_.size()) +
                         " does not match upper-triangle size for dim " + std::to_string(n));
    for (const ScalarExpr& e : upper_)
        if (e.coord_names() != coord_names_)
            throw InputError("metric component expression uses a different coordinate chart");
}

MetricField MetricField::diagonal(std::vector<std::string> coord_names,
                                  std::vector<ScalarExpr> diag, Signature signature) {
    const std::size_t n = coord_names.size();
    if (diag.size() != n) throw InputError("diagonal metric needs one expression per coordinate");
    std::vector<ScalarExpr> upper;
    upper.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            upper.push_back(i == j ? diag[i] : ScalarExpr::number(0.0, coord_names));
    return MetricField(std::move(coord_names), std::move(upper), signature);
}

int MetricField::upper_index(int i, int j) const {
    if (i > j) std::swap(i, j);
    const int n = dim();
    // row i starts after i rows of lengths n, n-1, ...
    return i * n - i * (i - 1) / 2 + (j - i);
}

const ScalarExpr& MetricField::component(int i, int j) const {
    return upper_[static_cast<std::size_t>(upper_index(i, j))];
}

std::vector<Jet> MetricField::component_jets(std::span<const double> point, int order) const {
    const int n = dim();
    std::vector<Jet> g;
    g.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.push_back(Jet::constant(0.0, n, order));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Jet v = component(i, j).eval_jet(point, order);
            g[static_cast<std::size_t>(i) * n + j] = v;
            if (i != j) g[static_cast<std::size_t>(j) * n + i] = std::move(v);
        }
    return g;
}

namespace {

std::string point_text(std::span<const double> point, std::span<const std::string> names) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (i) os << ", ";
        os << names[i] << '=' << point[i];
    }
    os << ')';
    return os.str();
}

} // namespace

MetricValue metric_eval(const MetricField& m, std::span<const double> point) {
    const int n = m.dim();
    if (static_cast<int>(point.size()) != n)
        throw Error("point length does not match chart dimension");
    Mat g(n);
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double v = m.component(i, j).eval(point);
            g(i, j) = v;
            g(j, i) = v;
            scale = std::max(scale, std::abs(v));
        }
    const double threshold = 1e-12 * std::pow(std::max(scale, 1e-300), n);
    SymFactorization f = sym_factorize(g, 0.0);
    if (std::abs(f.det) < threshold)
        throw GeometryError("singular metric (|det| = " + std::to_string(std::abs(f.det)) +
                            " below threshold) at " + point_text(point, m.coord_names()));
    const int expected_negative = m.signature() == Signature::riemannian ? 0 : 1;
    if (f.negative != expected_negative || f.zero != 0)
        throw GeometryError(std::string("metric signature mismatch: declared ") +
                            signature_name(m.signature()) + " but found " +
                            std::to_string(f.negative) + " negative eigenvalue(s) at " +
                            point_text(point, m.coord_names()));
    MetricValue out;
    out.g = std::move(g);
    out.g_inv = std::move(f.inverse);
    out.det = f.det;
    return out;
}

} // namespace einlike
