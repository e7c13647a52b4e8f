#pragma once

#include "einlike/expr.hpp"
#include "einlike/linalg.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace einlike {

enum class Signature { riemannian, lorentzian };

const char* signature_name(Signature s);
std::optional<Signature> signature_from_name(std::string_view name);

/// A (pseudo-)Riemannian metric on a single chart: symmetric matrix of
/// closed-form component expressions over named coordinates. Only the upper
/// triangle is stored; the lower triangle mirrors it. Nondegeneracy and the
/// declared signature are checked at evaluation, not construction.
class MetricField {
public:
    /// `upper` lists the components (i, j) with i <= j in row-major order:
    /// (0,0), (0,1), ..., (0,n-1), (1,1), ...
    MetricField(std::vector<std::string> coord_names, std::vector<ScalarExpr> upper,
                Signature signature);

    /// Diagonal metric from per-axis expressions.
    static MetricField diagonal(std::vector<std::string> coord_names,
                                std::vector<ScalarExpr> diag, Signature signature);

    int dim() const { return static_cast<int>(coord_names_.size()); }
    const std::vector<std::string>& coord_names() const { return coord_names_; }
    Signature signature() const { return signature_; }

    const ScalarExpr& component(int i, int j) const;

    /// All components evaluated as jets at a point (mirrored full matrix).
    std::vector<Jet> component_jets(std::span<const double> point, int order) const;

private:
    int upper_index(int i, int j) const;

    std::vector<std::string> coord_names_;
    std::vector<ScalarExpr> upper_;
    Signature signature_;
};

/// Pointwise metric data with inverse, determinant and signature validation.
struct MetricValue {
    Mat g;
    Mat g_inv;
    double det = 0.0;
};

/// Evaluate the metric at a point. Throws GeometryError when |det| falls below
/// 1e-12 * (max |g_ij|)^n or when the eigenvalue sign pattern contradicts the
/// declared signature.
MetricValue metric_eval(const MetricField& m, std::span<const double> point);

} // namespace einlike
