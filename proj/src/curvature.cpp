#include "einlike/curvature.hpp"

#include "einlike/errors.hpp"

#include <cmath>

namespace einlike {

namespace {

std::size_t idx2(int n, int i, int j) { return static_cast<std::size_t>(i) * n + j; }

std::size_t idx3(int n, int a, int b, int c) {
    return (static_cast<std::size_t>(a) * n + b) * n + c;
}

std::size_t idx4(int n, int a, int b, int c, int d) {
    return ((static_cast<std::size_t>(a) * n + b) * n + c) * n + d;
}

} // namespace

ChartFrame make_chart_frame(const MetricField& m, std::span<const double> point) {
    ChartFrame f;
    f.n = m.dim();
    f.point.assign(point.begin(), point.end());
    f.value = metric_eval(m, point);  // validates det and signature
    f.g = m.component_jets(point, 3);
    f.g_inv = jet_matrix_inverse(f.g, f.n);

    const int n = f.n;
    std::vector<Jet> dg(static_cast<std::size_t>(n) * n * n, Jet());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                dg[idx3(n, k, i, j)] = jet_derivative(f.g[idx2(n, i, j)], k);

    f.gamma.assign(static_cast<std::size_t>(n) * n * n, Jet());
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                Jet sum = Jet::constant(0.0, n, 2);
                for (int l = 0; l < n; ++l) {
                    Jet term = dg[idx3(n, i, j, l)] + dg[idx3(n, j, i, l)] - dg[idx3(n, l, i, j)];
                    sum += f.g_inv[idx2(n, k, l)] * term;
                }
                sum *= 0.5;
                f.gamma[idx3(n, k, i, j)] = sum;
                if (i != j) f.gamma[idx3(n, k, j, i)] = std::move(sum);
            }
    return f;
}

Tensor3 covariant_derivative_sym2(const ChartFrame& frame, std::span<const Jet> t) {
    const int n = frame.n;
    Tensor3 out(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = jet_derivative(t[idx2(n, i, j)], k).value();
                for (int l = 0; l < n; ++l) {
                    v -= frame.gamma_value(l, k, i) * t[idx2(n, l, j)].value();
                    v -= frame.gamma_value(l, k, j) * t[idx2(n, i, l)].value();
                }
                out(k, i, j) = v;
            }
    return out;
}

std::vector<Jet> hessian_jets(const ChartFrame& frame, const Jet& f) {
    const int n = frame.n;
    std::vector<Jet> df;
    df.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) df.push_back(jet_derivative(f, k));
    std::vector<Jet> h(static_cast<std::size_t>(n) * n, Jet());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Jet v = jet_derivative(df[static_cast<std::size_t>(i)], j);
            for (int k = 0; k < n; ++k)
                v -= frame.gamma_at(k, i, j) * df[static_cast<std::size_t>(k)];
            h[idx2(n, i, j)] = v;
            if (i != j) h[idx2(n, j, i)] = std::move(v);
        }
    return h;
}

CurvaturePack curvature(const MetricField& m, std::span<const double> point) {
    const ChartFrame frame = make_chart_frame(m, point);
    const int n = frame.n;

    CurvaturePack pack;
    pack.point = frame.point;
    pack.g = frame.value.g;
    pack.g_inv = frame.value.g_inv;
    pack.det = frame.value.det;
    pack.gamma = Tensor3(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) pack.gamma(k, i, j) = frame.gamma_value(k, i, j);

    // Riemann as order-1 jets; everything downstream differentiates it once.
    std::vector<Jet> riem(static_cast<std::size_t>(n) * n * n * n, Jet::constant(0.0, n, 1));
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;  // antisymmetric pair, diagonal stays zero
                for (int k = 0; k < n; ++k) {
                    if (i > j) {
                        riem[idx4(n, l, i, j, k)] = -riem[idx4(n, l, j, i, k)];
                        continue;
                    }
                    Jet v = jet_derivative(frame.gamma_at(l, j, k), i) -
                            jet_derivative(frame.gamma_at(l, i, k), j);
                    for (int mm = 0; mm < n; ++mm) {
                        v += frame.gamma_at(l, i, mm) * frame.gamma_at(mm, j, k);
                        v -= frame.gamma_at(l, j, mm) * frame.gamma_at(mm, i, k);
                    }
                    riem[idx4(n, l, i, j, k)] = std::move(v);
                }
            }

    pack.riemann = Tensor4(n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    pack.riemann(l, i, j, k) = riem[idx4(n, l, i, j, k)].value();

    std::vector<Jet> ric(static_cast<std::size_t>(n) * n, Jet());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Jet v = Jet::constant(0.0, n, 1);
            for (int i = 0; i < n; ++i) v += riem[idx4(n, i, i, j, k)];
            ric[idx2(n, j, k)] = std::move(v);
        }

    pack.ricci = Mat(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pack.ricci(i, j) = ric[idx2(n, i, j)].value();

    Jet scalar_jet = Jet::constant(0.0, n, 1);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) scalar_jet += frame.ginv_at(j, k) * ric[idx2(n, j, k)];
    pack.scalar = scalar_jet.value();
    pack.scalar_grad.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
        pack.scalar_grad[static_cast<std::size_t>(k)] = jet_derivative(scalar_jet, k).value();

    pack.nabla_ricci = covariant_derivative_sym2(frame, ric);

    pack.cotton = Tensor3(n);
    if (n >= 2) {
        const double c = 1.0 / (2.0 * (n - 1));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    pack.cotton(i, j, k) =
                        pack.nabla_ricci(k, i, j) - pack.nabla_ricci(i, k, j) -
                        c * (pack.scalar_grad[static_cast<std::size_t>(k)] * pack.g(i, j) -
                             pack.scalar_grad[static_cast<std::size_t>(i)] * pack.g(k, j));
    }

    pack.weyl = Tensor4(n);
    pack.weyl_div = Tensor3(n);
    pack.weyl_defined = n >= 4;
    if (!pack.weyl_defined) return pack;

    // All-lower Weyl as order-1 jets (storage pairs slot l with k, matching
    // the lowered Riemann layout g_lm R^m_ijk).
    std::vector<Jet> weyl_jet(static_cast<std::size_t>(n) * n * n * n, Jet());
    const double c2 = 1.0 / (n - 2);
    const double c3 = 1.0 / ((n - 1.0) * (n - 2.0));
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    Jet v = Jet::constant(0.0, n, 1);
                    for (int mm = 0; mm < n; ++mm)
                        v += frame.g_at(l, mm) * riem[idx4(n, mm, i, j, k)];
                    v += c2 * (frame.g_at(i, k) * ric[idx2(n, j, l)] -
                               frame.g_at(i, l) * ric[idx2(n, j, k)] +
                               frame.g_at(j, l) * ric[idx2(n, i, k)] -
                               frame.g_at(j, k) * ric[idx2(n, i, l)]);
                    v -= (c3 * scalar_jet) * (frame.g_at(i, k) * frame.g_at(j, l) -
                                              frame.g_at(i, l) * frame.g_at(j, k));
                    weyl_jet[idx4(n, l, i, j, k)] = std::move(v);
                }

    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    pack.weyl(l, i, j, k) = weyl_jet[idx4(n, l, i, j, k)].value();

    // First-slot-raised Weyl field, then its covariant divergence.
    std::vector<Jet> raised(static_cast<std::size_t>(n) * n * n * n, Jet());
    for (int e = 0; e < n; ++e)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    Jet v = Jet::constant(0.0, n, 1);
                    for (int mm = 0; mm < n; ++mm)
                        v += frame.ginv_at(e, mm) * weyl_jet[idx4(n, mm, a, b, c)];
                    raised[idx4(n, e, a, b, c)] = std::move(v);
                }

    Tensor3 div4(n);  // div4(a,b,c) = nabla_e raised[e][a][b][c]
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double v = 0.0;
                for (int e = 0; e < n; ++e) {
                    v += jet_derivative(raised[idx4(n, e, a, b, c)], e).value();
                    for (int mm = 0; mm < n; ++mm) {
                        v += frame.gamma_value(e, e, mm) * raised[idx4(n, mm, a, b, c)].value();
                        v -= frame.gamma_value(mm, e, a) * raised[idx4(n, e, mm, b, c)].value();
                        v -= frame.gamma_value(mm, e, b) * raised[idx4(n, e, a, mm, c)].value();
                        v -= frame.gamma_value(mm, e, c) * raised[idx4(n, e, a, b, mm)].value();
                    }
                }
                div4(a, b, c) = v;
            }

    // Slot arrangement chosen so weyl_div = (n-3)/(n-2) * cotton exactly.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) pack.weyl_div(i, j, k) = -div4(i, k, j);

    return pack;
}

Tensor3 christoffel(const MetricField& m, std::span<const double> point) {
    const ChartFrame frame = make_chart_frame(m, point);
    const int n = frame.n;
    Tensor3 out(n);
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(k, i, j) = frame.gamma_value(k, i, j);
    return out;
}

ScalarFieldCalculus scalar_field_calculus(const MetricField& m, const ScalarExpr& f,
                                          std::span<const double> point) {
    const ChartFrame frame = make_chart_frame(m, point);
    const int n = frame.n;
    const Jet fj = f.eval_jet(point, 2);

    ScalarFieldCalculus out;
    std::vector<double> df(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) df[static_cast<std::size_t>(k)] = jet_derivative(fj, k).value();

    out.grad.assign(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            out.grad[static_cast<std::size_t>(k)] += frame.value.g_inv(k, l) * df[static_cast<std::size_t>(l)];

    out.hess = Mat(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double h = jet_derivative(jet_derivative(fj, i), j).value();
            for (int k = 0; k < n; ++k)
                h -= frame.gamma_value(k, i, j) * df[static_cast<std::size_t>(k)];
            out.hess(i, j) = h;
        }

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.laplacian += frame.value.g_inv(i, j) * out.hess(i, j);
    return out;
}

MetricField conformal_rescale(const MetricField& m, const ScalarExpr& phi) {
    if (phi.coord_names() != m.coord_names())
        throw InputError("conformal factor must live on the metric's chart");
    const ScalarExpr phi2 = ScalarExpr::pow_int(phi, 2);
    const int n = m.dim();
    std::vector<ScalarExpr> upper;
    upper.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) upper.push_back(ScalarExpr::mul(phi2, m.component(i, j)));
    return MetricField(m.coord_names(), std::move(upper), m.signature());
}

ConformalCheck conformal_c02_check(const MetricField& g_bar, const ScalarExpr& phi,
                                   std::span<const double> point) {
    const int n = g_bar.dim();
    if (n < 4) throw InputError("conformal divergence check requires dimension >= 4");
    const double phi_val = phi.eval(point);
    if (phi_val <= 0.0)
        throw DomainError("non-positive conformal factor", phi.serialize(), "sample point");

    const CurvaturePack bar = curvature(g_bar, point);
    const CurvaturePack resc = curvature(conformal_rescale(g_bar, phi), point);

    const Jet phi_jet = phi.eval_jet(point, 1);
    std::vector<double> dphi(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) dphi[static_cast<std::size_t>(k)] = jet_derivative(phi_jet, k).value();

    // (dphi . Cbar) contracted through gbar on the same slot as weyl_div,
    // including its sign and (j,k) arrangement.
    Tensor3 correction(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double v = 0.0;
                for (int e = 0; e < n; ++e)
                    for (int mm = 0; mm < n; ++mm)
                        v += dphi[static_cast<std::size_t>(mm)] * bar.g_inv(mm, e) * bar.weyl(e, i, k, j);
                correction(i, j, k) = -v;
            }

    ConformalCheck out;
    const double factor = (n - 3.0) / phi_val;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const double lhs = resc.weyl_div(i, j, k);
                const double rhs = bar.weyl_div(i, j, k) + factor * correction(i, j, k);
                const double rhs_flipped = bar.weyl_div(i, j, k) - factor * correction(i, j, k);
                out.lhs_norm = std::max(out.lhs_norm, std::abs(lhs));
                out.rhs_norm = std::max(out.rhs_norm, std::abs(rhs));
                out.residual = std::max(out.residual, std::abs(lhs - rhs));
                out.residual_flipped_sign =
                    std::max(out.residual_flipped_sign, std::abs(lhs - rhs_flipped));
            }
    return out;
}

} // namespace einlike
