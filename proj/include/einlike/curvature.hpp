#pragma once

#include "einlike/metric.hpp"

#include <span>
#include <vector>

namespace einlike {

struct Tensor3 {
    int n = 0;
    std::vector<double> v;

    Tensor3() = default;
    explicit Tensor3(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_, 0.0) {}
    double& operator()(int a, int b, int c) {
        return v[(static_cast<std::size_t>(a) * n + b) * n + c];
    }
    double operator()(int a, int b, int c) const {
        return v[(static_cast<std::size_t>(a) * n + b) * n + c];
    }
};

struct Tensor4 {
    int n = 0;
    std::vector<double> v;

    Tensor4() = default;
    explicit Tensor4(int n_) : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_ * n_, 0.0) {}
    double& operator()(int a, int b, int c, int d) {
        return v[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d];
    }
    double operator()(int a, int b, int c, int d) const {
        return v[((static_cast<std::size_t>(a) * n + b) * n + c) * n + d];
    }
};

/// Jet-level data of a metric at one point: everything needed to assemble
/// curvature objects and covariant derivatives of derived tensor fields.
/// g and g_inv carry order-3 jets, the Christoffel symbols order 2.
struct ChartFrame {
    int n = 0;
    std::vector<double> point;
    std::vector<Jet> g;      // n*n, [i*n+j]
    std::vector<Jet> g_inv;  // n*n
    std::vector<Jet> gamma;  // n*n*n, [(k*n+i)*n+j] = Gamma^k_ij
    MetricValue value;       // validated pointwise metric

    const Jet& g_at(int i, int j) const { return g[static_cast<std::size_t>(i) * n + j]; }
    const Jet& ginv_at(int i, int j) const { return g_inv[static_cast<std::size_t>(i) * n + j]; }
    const Jet& gamma_at(int k, int i, int j) const {
        return gamma[(static_cast<std::size_t>(k) * n + i) * n + j];
    }
    double gamma_value(int k, int i, int j) const { return gamma_at(k, i, j).value(); }
};

ChartFrame make_chart_frame(const MetricField& m, std::span<const double> point);

/// All curvature objects of a metric at one point.
///
/// Conventions: R^l_ijk = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im
/// Gamma^m_jk - Gamma^l_jm Gamma^m_ik; Ric_jk = R^i_ijk (unit 2-sphere has
/// R = +2); nabla_ricci(k,i,j) = covariant d_k of Ric_ij. weyl(l,i,j,k) stores
/// the all-lower Weyl component pairing l with k (same slot layout as the
/// lowered Riemann tensor g_lm R^m_ijk); identically zero for n <= 3.
/// cotton(i,j,k) = nabla_ricci(k,i,j) - nabla_ricci(i,k,j)
/// - (dR_k g_ij - dR_i g_kj) / (2(n-1)); weyl_div is the once-contracted
/// covariant divergence of the Weyl field arranged so that
/// weyl_div = (n-3)/(n-2) * cotton holds as an identity.
struct CurvaturePack {
    std::vector<double> point;
    Mat g;
    Mat g_inv;
    double det = 0.0;
    Tensor3 gamma;             // (k,i,j) = Gamma^k_ij
    Tensor4 riemann;           // (l,i,j,k) = R^l_ijk
    Mat ricci;                 // R_ij
    double scalar = 0.0;       // R
    std::vector<double> scalar_grad;  // d_k R
    Tensor3 nabla_ricci;       // (k,i,j) = nabla_k R_ij
    bool weyl_defined = false; // n >= 4
    Tensor4 weyl;              // (l,i,j,k), all-lower
    Tensor3 cotton;            // (i,j,k)
    Tensor3 weyl_div;          // (i,j,k)
};

CurvaturePack curvature(const MetricField& m, std::span<const double> point);

/// Levi-Civita connection coefficients Gamma^k_ij at a point.
Tensor3 christoffel(const MetricField& m, std::span<const double> point);

/// Gradient, Hessian and Laplace-Beltrami of a scalar field at a point.
struct ScalarFieldCalculus {
    std::vector<double> grad;  // (grad f)^k, index raised
    Mat hess;                  // H^f_ij
    double laplacian = 0.0;
};

ScalarFieldCalculus scalar_field_calculus(const MetricField& m, const ScalarExpr& f,
                                          std::span<const double> point);

/// The metric with components phi^2 * m_ij as composed expressions.
/// Evaluation of the result is fully intrinsic; phi must stay positive on the
/// evaluated domain (a vanishing phi surfaces as a singular-metric error).
MetricField conformal_rescale(const MetricField& m, const ScalarExpr& phi);

// --- helpers shared with the warped-product and classification modules ------

/// Covariant derivative nabla_k T_ij of a symmetric (0,2) field given as jets
/// (order >= 1) on the frame's chart.
Tensor3 covariant_derivative_sym2(const ChartFrame& frame, std::span<const Jet> t);

/// Hessian field H^f_ij of a scalar jet (order 3) as order-1 jets.
std::vector<Jet> hessian_jets(const ChartFrame& frame, const Jet& f);

/// Residual of the conformal divergence identity for g = phi^2 * gbar:
/// div C (computed from g) equals div Cbar + ((n-3)/phi) dphi . Cbar with
/// indices raised by the matching metrics (the extra Weyl contractions cancel
/// by the first Bianchi identity). `residual_flipped_sign` evaluates the same
/// relation with the correction term negated, which corresponds to reading
/// the conformal change in the opposite direction (gbar = phi^2 g).
struct ConformalCheck {
    double lhs_norm = 0.0;
    double rhs_norm = 0.0;
    double residual = 0.0;               // max |lhs - rhs| over components
    double residual_flipped_sign = 0.0;  // opposite-direction reading
};

ConformalCheck conformal_c02_check(const MetricField& g_bar, const ScalarExpr& phi,
                                   std::span<const double> point);

} // namespace einlike
