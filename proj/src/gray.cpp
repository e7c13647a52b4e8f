#include "einlike/gray.hpp"

#include "einlike/errors.hpp"

#include <algorithm>
#include <cmath>

namespace einlike {

const char* gray_class_name(GrayClass c) {
    switch (c) {
        case GrayClass::P: return "P";
        case GrayClass::A: return "A";
        case GrayClass::B: return "B";
        case GrayClass::AB: return "A+B";
        case GrayClass::IA: return "I+A";
        case GrayClass::IB: return "I+B";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::member: return "member";
        case Verdict::non_member: return "non-member";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

const char* theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::TH1: return "TH1";
        case TheoremId::TH2: return "TH2";
        case TheoremId::TH3: return "TH3";
        case TheoremId::TH_IA: return "TH_IA";
        case TheoremId::ST_A: return "ST_A";
        case TheoremId::ST_B: return "ST_B";
        case TheoremId::ST_P: return "ST_P";
    }
    return "?";
}

DeviationTensors deviation_tensors(const CurvaturePack& pack) {
    const int n = static_cast<int>(pack.point.size());
    DeviationTensors d;
    d.dim = n;
    d.p = pack.nabla_ricci;
    d.a = Tensor3(n);
    d.b = Tensor3(n);
    d.ia = Tensor3(n);
    d.ab.assign(pack.scalar_grad.begin(), pack.scalar_grad.end());
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double cyc = pack.nabla_ricci(k, i, j) + pack.nabla_ricci(i, j, k) +
                                   pack.nabla_ricci(j, k, i);
                d.a(k, i, j) = cyc;
                d.b(k, i, j) = pack.nabla_ricci(k, i, j) - pack.nabla_ricci(i, k, j);
                const double gcyc = pack.scalar_grad[static_cast<std::size_t>(k)] * pack.g(i, j) +
                                    pack.scalar_grad[static_cast<std::size_t>(i)] * pack.g(j, k) +
                                    pack.scalar_grad[static_cast<std::size_t>(j)] * pack.g(k, i);
                d.ia(k, i, j) = cyc - (2.0 / (n + 2)) * gcyc;
            }
    d.ib_defined = n >= 3;
    d.ib = Tensor3(n);
    if (d.ib_defined) {
        // Codazzi deviation of Ric - R/(2(n-1)) g, which is the Cotton tensor
        // up to slot labels
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) d.ib(k, i, j) = pack.cotton(i, j, k);
    }
    if (pack.weyl_defined) {
        double s = 0.0;
        for (double v : pack.weyl_div.v) s += v * v;
        d.weyl_div_norm = std::sqrt(s);
    }
    return d;
}

DeviationTensors deviation_tensors(const MetricField& m, std::span<const double> point) {
    return deviation_tensors(curvature(m, point));
}

namespace {

double norm3(const Tensor3& t) {
    double s = 0.0;
    for (double v : t.v) s += v * v;
    return std::sqrt(s);
}

double norm_vec(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double norm_mat(const Mat& m) {
    double s = 0.0;
    for (double x : m.a) s += x * x;
    return std::sqrt(s);
}

Verdict threshold_verdict(double residual, double tol) {
    if (residual <= tol) return Verdict::member;
    if (residual > 10.0 * tol) return Verdict::non_member;
    return Verdict::indeterminate;
}

} // namespace

GrayClassReport classify(const MetricField& m, std::span<const std::vector<double>> samples,
                         double atol, double rtol) {
    if (samples.empty()) throw InputError("classification requires at least one sample point");
    const int n = m.dim();

    GrayClassReport report;
    report.dim = n;
    report.sample_count = samples.size();
    report.atol = atol;
    report.rtol = rtol;

    double scale = 1.0;
    std::array<double, 6> residual{};
    double weyl_div_residual = 0.0;
    for (const std::vector<double>& p : samples) {
        const CurvaturePack pack = curvature(m, p);
        const DeviationTensors d = deviation_tensors(pack);
        scale = std::max({scale, norm3(pack.nabla_ricci), norm_mat(pack.ricci)});
        residual[0] = std::max(residual[0], norm3(d.p));
        residual[1] = std::max(residual[1], norm3(d.a));
        residual[2] = std::max(residual[2], norm3(d.b));
        residual[3] = std::max(residual[3], norm_vec(d.ab));
        residual[4] = std::max(residual[4], norm3(d.ia));
        residual[5] = std::max(residual[5], d.ib_defined ? norm3(d.ib) : 0.0);
        weyl_div_residual = std::max(weyl_div_residual, d.weyl_div_norm);
    }

    const double tol = atol + rtol * scale;
    for (std::size_t c = 0; c < 6; ++c) {
        ClassResult& r = report.classes[c];
        r.residual = residual[c];
        r.scale = scale;
        r.verdict = threshold_verdict(residual[c], tol);
    }

    // I+B special cases
    {
        ClassResult& ib = report.result(GrayClass::IB);
        if (n < 3) {
            ib.verdict = Verdict::indeterminate;
            ib.note = "H-tensor definition degenerate for dimension " + std::to_string(n);
        } else if (n >= 4) {
            const Verdict weyl_verdict = threshold_verdict(weyl_div_residual, tol);
            if (weyl_verdict != ib.verdict) {
                ib.verdict = Verdict::indeterminate;
                ib.note = "Cotton and div-Weyl cross-checks disagree (div-Weyl residual " +
                          std::to_string(weyl_div_residual) + ")";
            } else if (ib.note.empty()) {
                ib.note = "cross-checked against div-Weyl residual " +
                          std::to_string(weyl_div_residual);
            }
        }
    }

    // Lattice consistency: a member child with a non-member parent is a
    // numerical contradiction; flag the parent.
    const std::pair<GrayClass, GrayClass> edges[] = {
        {GrayClass::P, GrayClass::A},  {GrayClass::P, GrayClass::B},
        {GrayClass::A, GrayClass::AB}, {GrayClass::B, GrayClass::AB},
        {GrayClass::A, GrayClass::IA}, {GrayClass::B, GrayClass::IB},
    };
    for (const auto& [child, parent] : edges) {
        if (report.result(child).verdict == Verdict::member &&
            report.result(parent).verdict == Verdict::non_member) {
            ClassResult& pr = report.result(parent);
            pr.verdict = Verdict::indeterminate;
            pr.note = std::string("lattice conflict: subclass ") + gray_class_name(child) +
                      " is a member (residual " + std::to_string(report.result(child).residual) +
                      ") but this class failed the threshold";
        }
    }

    auto is_member = [&](GrayClass c) { return report.result(c).verdict == Verdict::member; };
    if (is_member(GrayClass::P))
        report.finest_class = "P";
    else if (is_member(GrayClass::A) && is_member(GrayClass::B))
        report.finest_class = "indeterminate";  // meet is P, which failed
    else if (is_member(GrayClass::A))
        report.finest_class = "A";
    else if (is_member(GrayClass::B))
        report.finest_class = "B";
    else {
        std::vector<GrayClass> members;
        for (GrayClass c : {GrayClass::AB, GrayClass::IA, GrayClass::IB})
            if (is_member(c)) members.push_back(c);
        if (members.empty())
            report.finest_class = "none";
        else if (members.size() == 1)
            report.finest_class = gray_class_name(members[0]);
        else
            report.finest_class = "indeterminate";  // meet lies below the member set
    }
    return report;
}

// ---------------------------------------------------------------------------
// Theorem evaluators
// ---------------------------------------------------------------------------

namespace {

struct FactorVectors {
    std::span<const double> x, y, z;
};

double pair_form(const Mat& g, std::span<const double> u, std::span<const double> v) {
    double s = 0.0;
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
            s += g(a, b) * u[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(b)];
    return s;
}

double along(std::span<const double> u, std::span<const double> df) {
    double s = 0.0;
    for (std::size_t a = 0; a < u.size(); ++a) s += u[a] * df[a];
    return s;
}

double contract3(const Tensor3& t, std::span<const double> x, std::span<const double> y,
                 std::span<const double> z) {
    double s = 0.0;
    for (int k = 0; k < t.n; ++k)
        for (int i = 0; i < t.n; ++i)
            for (int j = 0; j < t.n; ++j)
                s += t(k, i, j) * x[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(i)] *
                     z[static_cast<std::size_t>(j)];
    return s;
}

/// Product deviation contracted with lifted factor vectors.
double product_deviation(TheoremId id, const CurvaturePack& pack, std::span<const double> xl,
                         std::span<const double> yl, std::span<const double> zl) {
    const int n = static_cast<int>(pack.point.size());
    const Tensor3& nr = pack.nabla_ricci;
    auto d_ric = [&](std::span<const double> a, std::span<const double> b,
                     std::span<const double> c) {
        double s = 0.0;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    s += nr(k, i, j) * a[static_cast<std::size_t>(k)] *
                         b[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)];
        return s;
    };
    switch (id) {
        case TheoremId::TH1:
        case TheoremId::ST_A:
            return d_ric(xl, xl, xl);
        case TheoremId::TH2:
        case TheoremId::ST_B:
            return d_ric(xl, yl, zl) - d_ric(yl, xl, zl);
        case TheoremId::TH3:
        case TheoremId::ST_P:
            return d_ric(xl, yl, zl);
        case TheoremId::TH_IA: {
            double g_xx = 0.0, x_dr = 0.0;
            for (int i = 0; i < n; ++i) {
                x_dr += xl[static_cast<std::size_t>(i)] * pack.scalar_grad[static_cast<std::size_t>(i)];
                for (int j = 0; j < n; ++j)
                    g_xx += pack.g(i, j) * xl[static_cast<std::size_t>(i)] * xl[static_cast<std::size_t>(j)];
            }
            return d_ric(xl, xl, xl) - (2.0 / (n + 2)) * x_dr * g_xx;
        }
    }
    throw Error("unknown theorem id");
}

} // namespace

TheoremResult theorem_residual(TheoremId id, const ProductSpec& spec, int factor,
                               std::span<const double> product_point, std::span<const double> x,
                               std::span<const double> y, std::span<const double> z) {
    if (id == TheoremId::ST_A || id == TheoremId::ST_B || id == TheoremId::ST_P)
        throw Error("spacetime theorem ids require a SpacetimeSpec");
    const int ni = spec.factor_dim(factor);
    if (static_cast<int>(x.size()) != ni || static_cast<int>(y.size()) != ni ||
        static_cast<int>(z.size()) != ni)
        throw Error("theorem vectors must be factor-tangent (length = factor dimension)");

    const std::vector<double> pi = spec.factor_point(factor, product_point);
    const std::vector<double> pj = spec.factor_point(factor == 1 ? 2 : 1, product_point);
    const FactorGeometry gi = factor_geometry(spec, factor, pi);
    const FactorGeometry gj = factor_geometry(spec, factor == 1 ? 2 : 1, pj);
    const CurvaturePack pack = curvature(spec.assembled, product_point);
    const int n = spec.dim();

    const std::vector<double> xl = spec.lift_vector(factor, x);
    const std::vector<double> yl = spec.lift_vector(factor, y);
    const std::vector<double> zl = spec.lift_vector(factor, z);

    const double f = gi.f;
    const double f3 = f * f * f;
    const double w = gj.grad_f_sq;  // (grad_j f_j)(f_j)

    TheoremResult out;
    out.lhs = product_deviation(id, pack, xl, yl, zl);

    switch (id) {
        case TheoremId::TH1: {
            // cubic class-A form: the cyclic sum collapses to 3 (D_X Ric)(X,X),
            // so both sides use the single-term polarization
            const double factor_dev = contract3(gi.pack.nabla_ricci, x, x, x);
            const double bracket = gj.f_diamond + (n - 2) * w;
            const double condition =
                contract3(gi.nabla_F, x, x, x) -
                (2.0 / f3) * along(x, gi.df) * pair_form(gi.pack.g, x, x) * bracket;
            out.rhs = factor_dev - condition;
            break;
        }
        case TheoremId::TH2: {
            const double factor_dev = contract3(gi.pack.nabla_ricci, x, y, z) -
                                      contract3(gi.pack.nabla_ricci, y, x, z);
            const double bracket = 2.0 * gj.f_diamond - (n - 2) * w;
            const double condition =
                contract3(gi.nabla_F, x, y, z) - contract3(gi.nabla_F, y, x, z) -
                (1.0 / f3) * bracket *
                    (along(x, gi.df) * pair_form(gi.pack.g, y, z) -
                     along(y, gi.df) * pair_form(gi.pack.g, x, z));
            out.rhs = factor_dev - condition;
            break;
        }
        case TheoremId::TH3: {
            const double factor_dev = contract3(gi.pack.nabla_ricci, x, y, z);
            const double condition =
                contract3(gi.nabla_F, x, y, z) -
                2.0 * (gj.f_diamond / f3) * along(x, gi.df) * pair_form(gi.pack.g, y, z) -
                ((n - 2) / f3) * w *
                    (pair_form(gi.pack.g, x, y) * along(z, gi.df) +
                     pair_form(gi.pack.g, x, z) * along(y, gi.df));
            out.rhs = factor_dev - condition;
            break;
        }
        case TheoremId::TH_IA: {
            const double g_xx = pair_form(gi.pack.g, x, x);
            const double x_dR_prod = along(xl, pack.scalar_grad);
            const double x_dR_fact = along(x, gi.pack.scalar_grad);
            const double factor_dev = contract3(gi.pack.nabla_ricci, x, x, x) -
                                      (2.0 / (gi.n + 2)) * x_dR_fact * g_xx;
            const double bracket = gj.f_diamond + (n - 2) * w;
            const double ce_a = contract3(gi.nabla_F, x, x, x) -
                                (2.0 / f3) * along(x, gi.df) * g_xx * bracket;
            const double fj2 = gj.f * gj.f;
            const double condition = ce_a + (2.0 / (n + 2)) * x_dR_prod * fj2 * g_xx -
                                     (2.0 / (gi.n + 2)) * x_dR_fact * g_xx;
            out.rhs = factor_dev - condition;
            // display form: the product-scalar term enters without the f_j^2
            // conformal factor
            const double condition_display = ce_a + (2.0 / (n + 2)) * x_dR_prod * g_xx -
                                             (2.0 / (gi.n + 2)) * x_dR_fact * g_xx;
            out.has_variant = true;
            out.variant_rhs = factor_dev - condition_display;
            out.variant_residual = out.lhs - out.variant_rhs;
            break;
        }
        default:
            throw Error("unhandled theorem id");
    }
    out.residual = out.lhs - out.rhs;
    return out;
}

TheoremResult theorem_residual(TheoremId id, const SpacetimeSpec& spec,
                               std::span<const double> point, std::span<const double> x,
                               std::span<const double> y, std::span<const double> z) {
    const ProductSpec prod = spacetime_as_product(spec);
    TheoremId base_id;
    switch (id) {
        case TheoremId::ST_A: base_id = TheoremId::TH1; break;
        case TheoremId::ST_B: base_id = TheoremId::TH2; break;
        case TheoremId::ST_P: base_id = TheoremId::TH3; break;
        default: throw Error("product theorem ids require a ProductSpec");
    }
    TheoremResult out = theorem_residual(base_id, prod, 2, point, x, y, z);

    // Display form: all-positive sigma-diamond reading
    const int n = spec.base.dim();
    const std::vector<double> pt{point[0]};
    const Jet sigma_jet = spec.sigma.eval_jet(pt, 2);
    const double sigma = sigma_jet.value();
    const double sigma_d = jet_derivative(sigma_jet, 0).value();
    const double sigma_dd = jet_derivative(jet_derivative(sigma_jet, 0), 0).value();
    const double sd_pos = sigma * sigma_dd + (n - 1) * sigma_d * sigma_d;

    const std::vector<double> px(point.begin() + 1, point.end());
    const FactorGeometry gb = factor_geometry(prod, 2, px);
    const double f3 = gb.f * gb.f * gb.f;

    double condition_display = 0.0;
    double factor_dev = 0.0;
    switch (id) {
        case TheoremId::ST_A:
            factor_dev = contract3(gb.pack.nabla_ricci, x, x, x);
            condition_display = contract3(gb.nabla_F, x, x, x) -
                              ((n - 1) * sigma_d * sigma_d + sd_pos) * (2.0 / f3) *
                                  along(x, gb.df) * pair_form(gb.pack.g, x, x);
            break;
        case TheoremId::ST_B:
            factor_dev = contract3(gb.pack.nabla_ricci, x, y, z) -
                         contract3(gb.pack.nabla_ricci, y, x, z);
            condition_display =
                contract3(gb.nabla_F, x, y, z) - contract3(gb.nabla_F, y, x, z) -
                (2.0 * sd_pos - (n - 1) * sigma_d * sigma_d) * (1.0 / f3) * along(x, gb.df) *
                    pair_form(gb.pack.g, y, z) +
                (2.0 * sd_pos + (n - 1) * sigma_d * sigma_d) * (1.0 / f3) * along(y, gb.df) *
                    pair_form(gb.pack.g, x, z);
            break;
        case TheoremId::ST_P:
            factor_dev = contract3(gb.pack.nabla_ricci, x, y, z);
            condition_display = contract3(gb.nabla_F, x, y, z) -
                              2.0 * (sd_pos / f3) * along(x, gb.df) * pair_form(gb.pack.g, y, z) -
                              ((n - 1) * sigma_d * sigma_d / f3) *
                                  (pair_form(gb.pack.g, x, z) * along(y, gb.df) +
                                   pair_form(gb.pack.g, x, y) * along(z, gb.df));
            break;
        default: break;
    }
    out.has_variant = true;
    out.variant_rhs = factor_dev - condition_display;
    out.variant_residual = out.lhs - out.variant_rhs;
    return out;
}

ScalarIdentityResult scalar_identity_residual(const ProductSpec& spec,
                                              std::span<const double> product_point) {
    const std::vector<double> p1 = spec.factor_point(1, product_point);
    const std::vector<double> p2 = spec.factor_point(2, product_point);
    const FactorGeometry g1 = factor_geometry(spec, 1, p1);
    const FactorGeometry g2 = factor_geometry(spec, 2, p2);
    const double n1 = spec.n1(), n2 = spec.n2();
    const double c1 = g1.pack.scalar, c2 = g2.pack.scalar;
    const double f1 = g1.f, f2 = g2.f;
    const double lap1 = g1.laplacian_f, lap2 = g2.laplacian_f;

    ScalarIdentityResult out;
    // display form (i = 1, j = 2), with F_i read as the scalar Laplacian
    out.display_value = c1 / (f2 * f2) + c2 / (f1 * f1) - (n1 * (n1 - 1) / (f2 * f2)) * lap2 -
                      (n2 * (n2 - 1) / (f1 * f1)) * lap1 - (2.0 * n1 / f2) * lap2 -
                      (2.0 * n2 / f1) * lap1;
    // same display with each Laplacian reattached to its own factor's indices
    out.swapped_value = c1 / (f2 * f2) + c2 / (f1 * f1) - (n1 * (n1 - 1) / (f2 * f2)) * lap1 -
                        (n2 * (n2 - 1) / (f1 * f1)) * lap2 - (2.0 * n1 / f2) * lap1 -
                        (2.0 * n2 / f1) * lap2;
    // scalar curvature derived from the Ricci block traces
    out.derived_value = c1 / (f2 * f2) + c2 / (f1 * f1) -
                        2.0 * n2 / (f1 * f2 * f2) * lap1 - 2.0 * n1 / (f2 * f1 * f1) * lap2 -
                        n1 * (n1 - 1) * g2.grad_f_sq / (f1 * f1 * f2 * f2) -
                        n2 * (n2 - 1) * g1.grad_f_sq / (f1 * f1 * f2 * f2);

    out.intrinsic_scalar = curvature(spec.assembled, product_point).scalar;
    out.display_residual = out.display_value - out.intrinsic_scalar;
    out.swapped_residual = out.swapped_value - out.intrinsic_scalar;
    out.derived_residual = out.derived_value - out.intrinsic_scalar;
    return out;
}

} // namespace einlike
