#include "einlike/warped.hpp"

#include "einlike/errors.hpp"

#include <cmath>

namespace einlike {

std::vector<double> ProductSpec::factor_point(int i, std::span<const double> product_point) const {
    const int off = factor_offset(i);
    const int nd = factor_dim(i);
    return {product_point.begin() + off, product_point.begin() + off + nd};
}

std::vector<double> ProductSpec::lift_vector(int i, std::span<const double> v) const {
    if (static_cast<int>(v.size()) != factor_dim(i))
        throw Error("factor vector length does not match factor dimension");
    std::vector<double> out(static_cast<std::size_t>(dim()), 0.0);
    const int off = factor_offset(i);
    for (int a = 0; a < factor_dim(i); ++a)
        out[static_cast<std::size_t>(off + a)] = v[static_cast<std::size_t>(a)];
    return out;
}

ProductSpec build_doubly_warped(FactorSpec f1, FactorSpec f2) {
    const int n1 = f1.metric.dim();
    const int n2 = f2.metric.dim();
    if (f1.warping.coord_names() != f1.metric.coord_names() ||
        f2.warping.coord_names() != f2.metric.coord_names())
        throw InputError("warping function must live on its own factor's chart");

    std::vector<std::string> coords = f1.metric.coord_names();
    for (const std::string& name : f2.metric.coord_names()) {
        for (const std::string& existing : coords)
            if (existing == name)
                throw InputError("coordinate name collision between factors: '" + name + "'");
        coords.push_back(name);
    }

    std::vector<int> map1(static_cast<std::size_t>(n1));
    for (int a = 0; a < n1; ++a) map1[static_cast<std::size_t>(a)] = a;
    std::vector<int> map2(static_cast<std::size_t>(n2));
    for (int a = 0; a < n2; ++a) map2[static_cast<std::size_t>(a)] = n1 + a;

    const ScalarExpr w1 = f1.warping.remapped(map1, coords);
    const ScalarExpr w2 = f2.warping.remapped(map2, coords);
    const ScalarExpr w1_sq = ScalarExpr::pow_int(w1, 2);
    const ScalarExpr w2_sq = ScalarExpr::pow_int(w2, 2);
    const ScalarExpr zero = ScalarExpr::number(0.0, coords);

    const int n = n1 + n2;
    std::vector<ScalarExpr> upper;
    upper.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            if (i < n1 && j < n1)
                upper.push_back(ScalarExpr::mul(w2_sq, f1.metric.component(i, j).remapped(map1, coords)));
            else if (i >= n1 && j >= n1)
                upper.push_back(
                    ScalarExpr::mul(w1_sq, f2.metric.component(i - n1, j - n1).remapped(map2, coords)));
            else
                upper.push_back(zero);
        }

    Signature sig;
    if (f1.metric.signature() == Signature::riemannian &&
        f2.metric.signature() == Signature::riemannian)
        sig = Signature::riemannian;
    else if (f1.metric.signature() != f2.metric.signature())
        sig = Signature::lorentzian;
    else
        throw InputError("product of two Lorentzian factors is not supported");

    ProductSpec spec{std::move(f1), std::move(f2),
                     MetricField(std::move(coords), std::move(upper), sig)};
    return spec;
}

FactorGeometry factor_geometry(const ProductSpec& spec, int factor,
                               std::span<const double> point_i) {
    const FactorSpec& fs = spec.factor(factor);
    FactorGeometry g;
    g.n = spec.factor_dim(factor);
    g.n_other = spec.factor_dim(factor == 1 ? 2 : 1);

    const ChartFrame frame = make_chart_frame(fs.metric, point_i);
    const Jet f_jet = fs.warping.eval_jet(point_i, 3);
    g.f = f_jet.value();
    if (g.f <= 0.0)
        throw DomainError("non-positive warping function", fs.warping.serialize(),
                          "factor '" + fs.name + "' sample point");

    g.df.resize(static_cast<std::size_t>(g.n));
    for (int a = 0; a < g.n; ++a) g.df[static_cast<std::size_t>(a)] = jet_derivative(f_jet, a).value();

    const std::vector<Jet> hess = hessian_jets(frame, f_jet);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            g.laplacian_f += frame.value.g_inv(a, b) * hess[static_cast<std::size_t>(a) * g.n + b].value();
            g.grad_f_sq += frame.value.g_inv(a, b) * g.df[static_cast<std::size_t>(a)] *
                           g.df[static_cast<std::size_t>(b)];
        }
    g.f_diamond = g.f * g.laplacian_f + (g.n_other - 1) * g.grad_f_sq;

    // F = (n_other / f) H^f as order-1 jets, then its covariant derivative
    const Jet scale = static_cast<double>(g.n_other) * jet_reciprocal(f_jet);
    std::vector<Jet> F_jets;
    F_jets.reserve(hess.size());
    for (const Jet& h : hess) F_jets.push_back(h * scale);
    g.F = Mat(g.n);
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            g.F(a, b) = F_jets[static_cast<std::size_t>(a) * g.n + b].value();
    g.nabla_F = covariant_derivative_sym2(frame, F_jets);

    g.pack = curvature(fs.metric, point_i);
    return g;
}

double f_diamond(const ProductSpec& spec, int factor, std::span<const double> point_i) {
    return factor_geometry(spec, factor, point_i).f_diamond;
}

Mat F_tensor(const ProductSpec& spec, int factor, std::span<const double> point_i) {
    return factor_geometry(spec, factor, point_i).F;
}

RicciBlocks product_ricci_blocks(const ProductSpec& spec, std::span<const double> product_point) {
    const std::vector<double> p1 = spec.factor_point(1, product_point);
    const std::vector<double> p2 = spec.factor_point(2, product_point);
    const FactorGeometry g1 = factor_geometry(spec, 1, p1);
    const FactorGeometry g2 = factor_geometry(spec, 2, p2);
    const int n = spec.dim();

    RicciBlocks out;
    out.block11 = Mat(g1.n);
    for (int a = 0; a < g1.n; ++a)
        for (int b = 0; b < g1.n; ++b)
            out.block11(a, b) = g1.pack.ricci(a, b) - g1.F(a, b) -
                                (g2.f_diamond / (g1.f * g1.f)) * g1.pack.g(a, b);
    out.block22 = Mat(g2.n);
    for (int a = 0; a < g2.n; ++a)
        for (int b = 0; b < g2.n; ++b)
            out.block22(a, b) = g2.pack.ricci(a, b) - g2.F(a, b) -
                                (g1.f_diamond / (g2.f * g2.f)) * g2.pack.g(a, b);
    // rank-one mixed block on the (n1 x n2) rectangle
    out.mixed_rows = g1.n;
    out.mixed_cols = g2.n;
    out.mixed.assign(static_cast<std::size_t>(g1.n) * g2.n, 0.0);
    for (int a = 0; a < g1.n; ++a)
        for (int c = 0; c < g2.n; ++c)
            out.mixed[static_cast<std::size_t>(a) * g2.n + c] =
                (n - 2) * (g1.df[static_cast<std::size_t>(a)] / g1.f) *
                (g2.df[static_cast<std::size_t>(c)] / g2.f);
    return out;
}

double nabla_ricci_restriction(const ProductSpec& spec, int factor,
                               std::span<const double> product_point, std::span<const double> x,
                               std::span<const double> y, std::span<const double> z) {
    const int ni = spec.factor_dim(factor);
    if (static_cast<int>(x.size()) != ni || static_cast<int>(y.size()) != ni ||
        static_cast<int>(z.size()) != ni)
        throw Error("factor-tangent vectors must have the factor dimension");
    const std::vector<double> pi = spec.factor_point(factor, product_point);
    const std::vector<double> pj = spec.factor_point(factor == 1 ? 2 : 1, product_point);
    const FactorGeometry gi = factor_geometry(spec, factor, pi);
    const FactorGeometry gj = factor_geometry(spec, factor == 1 ? 2 : 1, pj);
    const int n = spec.dim();

    double d_ric = 0.0, d_F = 0.0;
    for (int k = 0; k < ni; ++k)
        for (int a = 0; a < ni; ++a)
            for (int b = 0; b < ni; ++b) {
                const double w = x[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(a)] *
                                 z[static_cast<std::size_t>(b)];
                d_ric += w * gi.pack.nabla_ricci(k, a, b);
                d_F += w * gi.nabla_F(k, a, b);
            }

    auto pair_g = [&](std::span<const double> u, std::span<const double> v) {
        double s = 0.0;
        for (int a = 0; a < ni; ++a)
            for (int b = 0; b < ni; ++b)
                s += gi.pack.g(a, b) * u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
        return s;
    };
    auto along = [&](std::span<const double> u) {
        double s = 0.0;
        for (int a = 0; a < ni; ++a) s += u[static_cast<std::size_t>(a)] * gi.df[static_cast<std::size_t>(a)];
        return s;
    };

    const double f3 = gi.f * gi.f * gi.f;
    return d_ric - d_F + 2.0 * (gj.f_diamond / f3) * along(x) * pair_g(y, z) +
           (n - 2) * (gj.grad_f_sq / f3) * (pair_g(x, y) * along(z) + pair_g(x, z) * along(y));
}

MetricField build_spacetime(const SpacetimeSpec& s) {
    return spacetime_as_product(s).assembled;
}

ProductSpec spacetime_as_product(const SpacetimeSpec& s) {
    if (s.sigma.coord_count() != 1)
        throw InputError("sigma must depend on the single time coordinate");
    if (s.base.signature() != Signature::riemannian)
        throw InputError("spacetime base metric must be Riemannian");
    const std::vector<std::string> tc = s.sigma.coord_names();
    MetricField time_metric =
        MetricField::diagonal(tc, {ScalarExpr::number(-1.0, tc)}, Signature::lorentzian);
    FactorSpec time_factor{"time", std::move(time_metric), s.sigma};
    FactorSpec base_factor{"base", s.base, s.f};
    return build_doubly_warped(std::move(time_factor), std::move(base_factor));
}

SpacetimeBlocks spacetime_ricci_blocks(const SpacetimeSpec& s, std::span<const double> point) {
    const ProductSpec prod = spacetime_as_product(s);
    const int n = s.base.dim();
    if (static_cast<int>(point.size()) != n + 1)
        throw Error("spacetime point must supply (t, x^1..x^n)");

    const std::vector<double> pt{point[0]};
    const std::vector<double> px(point.begin() + 1, point.end());

    const Jet sigma_jet = s.sigma.eval_jet(pt, 2);
    const double sigma = sigma_jet.value();
    const double sigma_d = jet_derivative(sigma_jet, 0).value();
    const double sigma_dd = jet_derivative(jet_derivative(sigma_jet, 0), 0).value();
    if (sigma <= 0.0)
        throw DomainError("non-positive sigma", s.sigma.serialize(), "spacetime sample point");

    const FactorGeometry base_geom = factor_geometry(prod, 2, px);
    const double f = base_geom.f;

    SpacetimeBlocks out;
    out.n = n;
    out.sigma_diamond_positive = sigma * sigma_dd + (n - 1) * sigma_d * sigma_d;
    out.sigma_diamond_lorentzian = -out.sigma_diamond_positive;  // computed on (I, -dt^2)
    out.f_diamond_value = f * base_geom.laplacian_f;

    out.tt_formula = (n / sigma) * sigma_dd + out.f_diamond_value / (sigma * sigma);

    // F on the base factor carries n_other = 1, so F = (1/f) H^f already.
    out.uv_formula = Mat(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            out.uv_formula(a, b) = base_geom.pack.ricci(a, b) - base_geom.F(a, b) -
                                 (out.sigma_diamond_lorentzian / (f * f)) * base_geom.pack.g(a, b);

    out.tu_formula.assign(static_cast<std::size_t>(n), 0.0);
    for (int a = 0; a < n; ++a)
        out.tu_formula[static_cast<std::size_t>(a)] =
            (n - 1) * (sigma_d / sigma) * (base_geom.df[static_cast<std::size_t>(a)] / f);

    const CurvaturePack pack = curvature(prod.assembled, point);
    out.tt_intrinsic = pack.ricci(0, 0);
    out.uv_intrinsic = Mat(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) out.uv_intrinsic(a, b) = pack.ricci(a + 1, b + 1);
    out.tu_intrinsic.assign(static_cast<std::size_t>(n), 0.0);
    for (int a = 0; a < n; ++a) out.tu_intrinsic[static_cast<std::size_t>(a)] = pack.ricci(0, a + 1);

    // the tt formula is Ric(dt, dt) on the coordinate vector; intrinsic
    // pack.ricci(0,0) is the same slot, so compare directly
    out.tt_residual_direct = std::abs(out.tt_formula - out.tt_intrinsic);
    out.tt_residual_flipped = std::abs(out.tt_formula + out.tt_intrinsic);
    for (int a = 0; a < n; ++a) {
        out.tu_residual = std::max(out.tu_residual,
                                   std::abs(out.tu_formula[static_cast<std::size_t>(a)] -
                                            out.tu_intrinsic[static_cast<std::size_t>(a)]));
        for (int b = 0; b < n; ++b)
            out.uv_residual = std::max(out.uv_residual,
                                       std::abs(out.uv_formula(a, b) - out.uv_intrinsic(a, b)));
    }

    const double tt_scale = std::max({std::abs(out.tt_formula), std::abs(out.tt_intrinsic), 1e-12});
    if (out.tt_residual_direct <= 1e-7 * std::max(tt_scale, 1.0))
        out.tt_finding = "match";
    else if (out.tt_residual_flipped <= 1e-7 * std::max(tt_scale, 1.0))
        out.tt_finding = "sign_flip";
    else
        out.tt_finding = "mixed";
    return out;
}

} // namespace einlike
