#pragma once

#include "einlike/curvature.hpp"

#include <span>
#include <string>
#include <vector>

namespace einlike {

/// One factor of a doubly warped product: a metric together with the warping
/// function that lives on this factor's coordinates (and scales the other
/// factor's block). The warping must stay positive on evaluated points.
struct FactorSpec {
    std::string name;
    MetricField metric;
    ScalarExpr warping;
};

/// Doubly warped product: chart = factor1 coords followed by factor2 coords,
/// metric blocks f2^2 g1 (+) f1^2 g2, cross blocks identically zero.
struct ProductSpec {
    FactorSpec factor1;
    FactorSpec factor2;
    MetricField assembled;

    int n1() const { return factor1.metric.dim(); }
    int n2() const { return factor2.metric.dim(); }
    int dim() const { return n1() + n2(); }

    const FactorSpec& factor(int i) const { return i == 1 ? factor1 : factor2; }
    int factor_dim(int i) const { return i == 1 ? n1() : n2(); }
    int factor_offset(int i) const { return i == 1 ? 0 : n1(); }

    /// Slice a product-chart point down to factor i's coordinates.
    std::vector<double> factor_point(int i, std::span<const double> product_point) const;

    /// Zero-pad a factor-tangent vector to the product chart.
    std::vector<double> lift_vector(int i, std::span<const double> v) const;
};

/// Assemble the doubly warped product. Coordinate names must be globally
/// unique across factors; collisions are an error, not a rename.
ProductSpec build_doubly_warped(FactorSpec f1, FactorSpec f2);

/// Everything the block formulas need about one factor at one point:
/// curvature pack, warping derivatives, the Hessian-correction tensor
/// F = (n_other / f) Hess f and its covariant derivative.
struct FactorGeometry {
    int n = 0;        // this factor's dimension
    int n_other = 0;  // the other factor's dimension
    double f = 0.0;   // warping value
    std::vector<double> df;  // d_a f
    double laplacian_f = 0.0;
    double grad_f_sq = 0.0;  // g_i(grad f, grad f); sign follows the factor metric
    double f_diamond = 0.0;  // f lap f + (n_other - 1) |grad f|^2
    CurvaturePack pack;
    Mat F;            // (n_other / f) H^f
    Tensor3 nabla_F;  // nabla_k F_ij
};

FactorGeometry factor_geometry(const ProductSpec& spec, int factor,
                               std::span<const double> point_i);

/// Notation-4 scalar f_i diamond = f_i lap_i f_i + (n_j - 1) |grad_i f_i|^2.
double f_diamond(const ProductSpec& spec, int factor, std::span<const double> point_i);

/// Notation-6 tensor F^i = (n_j / f_i) H^{f_i}.
Mat F_tensor(const ProductSpec& spec, int factor, std::span<const double> point_i);

/// The three Ricci blocks of the product evaluated from factor-intrinsic
/// quantities only: Ric(X_i, Y_i) = Ric^i - (n_j/f_i) H^{f_i}
/// - (f_j_diamond / f_i^2) g_i, and the rank-one mixed block
/// Ric(X_1, Y_2) = (n-2) d ln f_1 (x) d ln f_2.
struct RicciBlocks {
    Mat block11;               // n1 x n1
    Mat block22;               // n2 x n2
    int mixed_rows = 0;        // n1
    int mixed_cols = 0;        // n2
    std::vector<double> mixed; // row-major n1 x n2
    double mixed_at(int a, int c) const {
        return mixed[static_cast<std::size_t>(a) * mixed_cols + c];
    }
};

RicciBlocks product_ricci_blocks(const ProductSpec& spec, std::span<const double> product_point);

/// The restriction identity for (D_X Ric)(Y, Z) on factor-tangent slots,
/// evaluated from factor-intrinsic data:
/// (D^i Ric^i) - (D^i F^i) + 2 (f_j_diamond / f_i^3) X(f_i) g_i(Y,Z)
/// + (n-2)/f_i^3 [g_i(X,Y) Z(f_i) + g_i(X,Z) Y(f_i)] |grad_j f_j|^2.
double nabla_ricci_restriction(const ProductSpec& spec, int factor,
                               std::span<const double> product_point, std::span<const double> x,
                               std::span<const double> y, std::span<const double> z);

// --- doubly warped spacetimes ------------------------------------------------

/// Lorentzian doubly warped spacetime -f(x)^2 dt^2 (+) sigma(t)^2 g(x).
/// sigma lives on the 1-dimensional time chart, f on the base chart.
struct SpacetimeSpec {
    ScalarExpr sigma;   // over the time coordinate, positive
    MetricField base;   // Riemannian (M, g), dimension n
    ScalarExpr f;       // over base coordinates, positive
};

/// Assembled Lorentzian metric on the chart (t, x^1..x^n).
MetricField build_spacetime(const SpacetimeSpec& s);

/// The spacetime viewed as a doubly warped product with the time interval as
/// factor 1 (metric -dt^2, warping sigma) and the base as factor 2 (warping f).
ProductSpec spacetime_as_product(const SpacetimeSpec& s);

/// Ricci blocks of the spacetime from the block formulas, next to the
/// intrinsic Lorentzian Ricci of the assembled metric at the same point.
///
/// The (U,V) block uses the factor-intrinsic diamond scalar of sigma computed
/// on (I, -dt^2), sigma_diamond = -(sigma sigma'' + (n-1) sigma'^2); the
/// all-positive reading sigma sigma'' + (n-1) sigma'^2 is also reported. The
/// (t,t) entry follows the display form (n/sigma) sigma'' + f lap f /
/// sigma^2, which disagrees with the intrinsic value in the sign of the
/// sigma'' term; the comparator reports the discrepancy rather than
/// absorbing it.
struct SpacetimeBlocks {
    int n = 0;  // base dimension
    double tt_formula = 0.0;
    double tt_intrinsic = 0.0;
    Mat uv_formula;    // n x n
    Mat uv_intrinsic;  // n x n
    std::vector<double> tu_formula;    // length n
    std::vector<double> tu_intrinsic;  // length n
    double sigma_diamond_lorentzian = 0.0;
    double sigma_diamond_positive = 0.0;
    double f_diamond_value = 0.0;  // f lap f
    double uv_residual = 0.0;      // max |formula - intrinsic| over the block
    double tu_residual = 0.0;
    double tt_residual_direct = 0.0;   // |formula - intrinsic|
    double tt_residual_flipped = 0.0;  // |formula + intrinsic|
    std::string tt_finding;            // "match" | "sign_flip" | "mixed"
};

SpacetimeBlocks spacetime_ricci_blocks(const SpacetimeSpec& s, std::span<const double> point);

} // namespace einlike
