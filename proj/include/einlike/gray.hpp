#pragma once

#include "einlike/warped.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace einlike {

/// The computable Einstein-like classes. Class I alone has no computable
/// defining identity and is reported as "not evaluated".
enum class GrayClass { P, A, B, AB, IA, IB };

inline constexpr std::array<GrayClass, 6> kGrayClasses{GrayClass::P,  GrayClass::A,
                                                       GrayClass::B,  GrayClass::AB,
                                                       GrayClass::IA, GrayClass::IB};

const char* gray_class_name(GrayClass c);

enum class Verdict { member, non_member, indeterminate };

const char* verdict_name(Verdict v);

/// Per-point deviation tensors, one per class:
///   P: nabla Ric itself;  A: cyclic sum of nabla Ric;
///   B: Codazzi deviation nabla_k R_ij - nabla_i R_kj;
///   A(+)B: dR;  I(+)A: cyclic sum of nabla (Ric - 2R/(n+2) g);
///   I(+)B: Codazzi deviation of Ric - R/(2(n-1)) g (equals the Cotton
///   tensor), undefined for n < 3.
struct DeviationTensors {
    int dim = 0;
    Tensor3 p;   // (k,i,j)
    Tensor3 a;   // (k,i,j) fully symmetrized cyclic sum
    Tensor3 b;   // (k,i,j)
    std::vector<double> ab;  // d_k R
    Tensor3 ia;  // (k,i,j)
    bool ib_defined = false;
    Tensor3 ib;  // (k,i,j)
    double weyl_div_norm = 0.0;  // n >= 4 cross-check companion for I(+)B
};

DeviationTensors deviation_tensors(const CurvaturePack& pack);
DeviationTensors deviation_tensors(const MetricField& m, std::span<const double> point);

struct ClassResult {
    double residual = 0.0;
    double scale = 1.0;
    Verdict verdict = Verdict::indeterminate;
    std::string note;
};

struct GrayClassReport {
    int dim = 0;
    std::size_t sample_count = 0;
    double atol = 0.0;
    double rtol = 0.0;
    std::array<ClassResult, 6> classes;  // indexed in kGrayClasses order
    std::string finest_class;            // class name, "none", or "indeterminate"

    ClassResult& result(GrayClass c) { return classes[static_cast<std::size_t>(c)]; }
    const ClassResult& result(GrayClass c) const { return classes[static_cast<std::size_t>(c)]; }
};

/// Classify a metric from residual norms aggregated (max) over sample points.
/// Membership threshold: residual <= atol + rtol * scale with
/// scale = max(|nabla Ric|, |Ric|, 1) over samples; residuals in
/// (tol, 10 tol] are indeterminate. Verdicts are forced consistent with the
/// inclusion lattice P < A < A(+)B, P < B < A(+)B, A < I(+)A, B < I(+)B:
/// a member child with a non-member parent marks the parent indeterminate.
GrayClassReport classify(const MetricField& m, std::span<const std::vector<double>> samples,
                         double atol, double rtol);

// --- theorem residual evaluators --------------------------------------------

enum class TheoremId { TH1, TH2, TH3, TH_IA, ST_A, ST_B, ST_P };

const char* theorem_name(TheoremId id);

/// Both sides of a theorem's unconditional proof identity: lhs is the product
/// deviation restricted to factor-tangent slots (intrinsic computation on the
/// assembled chart), rhs is the factor deviation minus the theorem's condition
/// expression, assembled from factor-intrinsic data only. The identity
/// lhs == rhs holds for every doubly warped product; the theorem's
/// if-and-only-if follows when the product deviation vanishes.
///
/// For TH_IA and the spacetime theorems a commonly displayed form of the
/// condition differs from the derived one (a missing conformal factor, resp.
/// the sign reading of the diamond scalar); `variant_rhs`/`variant_residual`
/// evaluate that display form next to the derived identity.
struct TheoremResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    bool has_variant = false;
    double variant_rhs = 0.0;
    double variant_residual = 0.0;
};

/// TH1/TH_IA use the cubic insertion (x,x,x); TH2/TH3 use (x;y,z).
TheoremResult theorem_residual(TheoremId id, const ProductSpec& spec, int factor,
                               std::span<const double> product_point, std::span<const double> x,
                               std::span<const double> y, std::span<const double> z);

/// Spacetime variants ST_A/ST_B/ST_P evaluate the base-factor identity of the
/// corresponding product theorem, plus the display form with the all-positive
/// sigma-diamond reading.
TheoremResult theorem_residual(TheoremId id, const SpacetimeSpec& spec,
                               std::span<const double> point, std::span<const double> x,
                               std::span<const double> y, std::span<const double> z);

/// The constant-scalar-curvature display equation evaluated against the
/// intrinsic product scalar curvature. `display_value` is the commonly
/// displayed left-hand side; `derived_value` re-derives the scalar curvature
/// from the Ricci block trace (it must match `intrinsic_scalar` to roundoff);
/// `swapped_value` reattaches each Laplacian to its own factor's index pair.
struct ScalarIdentityResult {
    double display_value = 0.0;
    double swapped_value = 0.0;
    double derived_value = 0.0;
    double intrinsic_scalar = 0.0;
    double display_residual = 0.0;
    double swapped_residual = 0.0;
    double derived_residual = 0.0;
};

ScalarIdentityResult scalar_identity_residual(const ProductSpec& spec,
                                              std::span<const double> product_point);

} // namespace einlike
