#pragma once

#include "einlike/multi_index.hpp"

#include <span>
#include <string>
#include <vector>

namespace einlike {

/// Elementary functions available for truncated Taylor composition.
enum class Func { sin, cos, tan, exp, log, sinh, cosh, tanh, sqrt };

const char* func_name(Func f);

/// Multivariate truncated Taylor polynomial of order <= 3.
///
/// Coefficients are stored densely in the graded order of MultiIndexTable;
/// coeff(pos) is c_alpha = (d^alpha f) / alpha! at the expansion point. The
/// order is carried per value: differentiating drops it by one, combining two
/// jets keeps the smaller, so truncation is tracked automatically.
class Jet {
public:
    Jet() : dim_(1), order_(0), coeffs_(1, 0.0) {}
    Jet(int dim, int order);

    static Jet constant(double value, int dim, int order);
    static Jet variable(int var_index, double value, int dim, int order);

    int dim() const noexcept { return dim_; }
    int order() const noexcept { return order_; }
    int coeff_count() const noexcept { return static_cast<int>(coeffs_.size()); }

    double value() const { return coeffs_[0]; }
    double coeff(int pos) const { return coeffs_[static_cast<std::size_t>(pos)]; }
    double& coeff(int pos) { return coeffs_[static_cast<std::size_t>(pos)]; }

    /// True partial derivative d^alpha (= alpha! * c_alpha). |alpha| must be <= order.
    double partial(std::span<const int> alpha) const;

    Jet truncated(int order) const;
    bool all_finite() const;

    Jet operator-() const;
    Jet& operator+=(const Jet& rhs);
    Jet& operator-=(const Jet& rhs);
    Jet& operator+=(double rhs) { coeffs_[0] += rhs; return *this; }
    Jet& operator-=(double rhs) { coeffs_[0] -= rhs; return *this; }
    Jet& operator*=(double rhs);
    Jet& operator/=(double rhs) { return *this *= 1.0 / rhs; }

    friend Jet operator+(Jet a, const Jet& b) { a += b; return a; }
    friend Jet operator-(Jet a, const Jet& b) { a -= b; return a; }
    friend Jet operator+(Jet a, double b) { a += b; return a; }
    friend Jet operator+(double a, Jet b) { b += a; return b; }
    friend Jet operator-(Jet a, double b) { a -= b; return a; }
    friend Jet operator-(double a, const Jet& b) { Jet r = -b; r += a; return r; }
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(Jet a, double b) { a *= b; return a; }
    friend Jet operator*(double a, Jet b) { b *= a; return b; }
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator/(Jet a, double b) { a /= b; return a; }
    friend Jet operator/(double a, const Jet& b);

private:
    const MultiIndexTable& table() const { return MultiIndexTable::get(dim_); }
    void check_compatible(const Jet& rhs) const;

    int dim_;
    int order_;
    std::vector<double> coeffs_;
};

/// 1/a as a truncated power series. a must have nonzero constant term.
Jet jet_reciprocal(const Jet& a);

/// Integer power by repeated multiplication (negative k via reciprocal).
Jet jet_pow_int(const Jet& a, long long k);

/// Real power a^p for non-integer p; requires positive constant term.
Jet jet_pow_real(const Jet& a, double p);

/// fn composed with a (univariate Taylor of fn about a's constant term,
/// truncated composition with the nonconstant part).
Jet jet_compose(Func fn, const Jet& a);

/// Partial derivative field d_var a as a jet of order a.order() - 1.
Jet jet_derivative(const Jet& a, int var);

// --- strict named operations -------------------------------------------------

enum class JetOp { add, sub, mul, div };

/// Seed jet for a chart coordinate: value at pos 0, unit first-order coefficient.
Jet jet_variable(int var_index, double value, int dim, int order);

/// Elementwise Taylor arithmetic; both operands must share dim and order.
Jet jet_arith(JetOp op, const Jet& a, const Jet& b);

/// True partial derivative d^alpha at the expansion point.
double partial(const Jet& a, std::span<const int> alpha);

} // namespace einlike
