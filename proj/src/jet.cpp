#include "einlike/jet.hpp"

#include "einlike/errors.hpp"

#include <algorithm>
#include <cmath>

namespace einlike {

const char* func_name(Func f) {
    switch (f) {
        case Func::sin: return "sin";
        case Func::cos: return "cos";
        case Func::tan: return "tan";
        case Func::exp: return "exp";
        case Func::log: return "log";
        case Func::sinh: return "sinh";
        case Func::cosh: return "cosh";
        case Func::tanh: return "tanh";
        case Func::sqrt: return "sqrt";
    }
    return "?";
}

namespace {

[[noreturn]] void domain_fail(const std::string& what, double c0) {
    throw DomainError(what, "<jet>", "constant term " + std::to_string(c0));
}

} // namespace

Jet::Jet(int dim, int order) : dim_(dim), order_(order) {
    if (order < 0 || order > MultiIndexTable::kMaxOrder)
        throw Error("jet order " + std::to_string(order) + " out of range [0, 3]");
    const auto& t = MultiIndexTable::get(dim);
    coeffs_.assign(static_cast<std::size_t>(t.size_at_order(order)), 0.0);
}

Jet Jet::constant(double value, int dim, int order) {
    Jet j(dim, order);
    j.coeffs_[0] = value;
    return j;
}

Jet Jet::variable(int var_index, double value, int dim, int order) {
    if (var_index < 0 || var_index >= dim)
        throw Error("jet variable index " + std::to_string(var_index) + " out of range for dim " +
                    std::to_string(dim));
    Jet j(dim, order);
    j.coeffs_[0] = value;
    if (order >= 1) j.coeffs_[static_cast<std::size_t>(1 + var_index)] = 1.0;
    return j;
}

double Jet::partial(std::span<const int> alpha) const {
    if (static_cast<int>(alpha.size()) != dim_)
        throw Error("multi-index length does not match jet dimension");
    const auto& t = table();
    const int pos = t.position(alpha);
    if (pos < 0 || t.degree(pos) > order_)
        throw Error("multi-index degree exceeds jet order " + std::to_string(order_));
    return t.factorial(pos) * coeffs_[static_cast<std::size_t>(pos)];
}

Jet Jet::truncated(int order) const {
    if (order >= order_) return *this;
    Jet r(dim_, order);
    std::copy_n(coeffs_.begin(), r.coeffs_.size(), r.coeffs_.begin());
    return r;
}

bool Jet::all_finite() const {
    for (double c : coeffs_)
        if (!std::isfinite(c)) return false;
    return true;
}

void Jet::check_compatible(const Jet& rhs) const {
    if (dim_ != rhs.dim_)
        throw Error("jet dimension mismatch: " + std::to_string(dim_) + " vs " + std::to_string(rhs.dim_));
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (double& c : r.coeffs_) c = -c;
    return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
    check_compatible(rhs);
    if (rhs.order_ < order_) *this = truncated(rhs.order_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
    check_compatible(rhs);
    if (rhs.order_ < order_) *this = truncated(rhs.order_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    return *this;
}

Jet& Jet::operator*=(double rhs) {
    for (double& c : coeffs_) c *= rhs;
    return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
    a.check_compatible(b);
    const int r = std::min(a.order_, b.order_);
    const auto& t = a.table();
    Jet out(a.dim_, r);
    const int na = std::min<int>(a.coeff_count(), t.size_at_order(r));
    for (int p = 0; p < na; ++p) {
        const double ap = a.coeffs_[static_cast<std::size_t>(p)];
        if (ap == 0.0) continue;
        const int qmax = std::min<int>(b.coeff_count(), t.size_at_order(r - t.degree(p)));
        for (int q = 0; q < qmax; ++q) {
            const double bq = b.coeffs_[static_cast<std::size_t>(q)];
            if (bq == 0.0) continue;
            out.coeffs_[static_cast<std::size_t>(t.product(p, q))] += ap * bq;
        }
    }
    return out;
}

Jet jet_reciprocal(const Jet& a) {
    const double c0 = a.value();
    if (c0 == 0.0) domain_fail("division by jet with zero constant term", c0);
    // a = c0 (1 + u), 1/a = (1 - u + u^2 - u^3) / c0
    Jet u = a * (1.0 / c0);
    u.coeff(0) = 0.0;
    Jet acc = Jet::constant(1.0, a.dim(), a.order());
    if (a.order() >= 1) {
        const Jet u2 = u * u;
        acc -= u;
        acc += u2;
        acc -= u2 * u;
    }
    return acc * (1.0 / c0);
}

Jet operator/(const Jet& a, const Jet& b) { return a * jet_reciprocal(b); }

Jet operator/(double a, const Jet& b) { return jet_reciprocal(b) * a; }

Jet jet_pow_int(const Jet& a, long long k) {
    if (k < 0) return jet_reciprocal(jet_pow_int(a, -k));
    Jet result = Jet::constant(1.0, a.dim(), a.order());
    Jet base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

Jet jet_pow_real(const Jet& a, double p) {
    const double c0 = a.value();
    if (c0 <= 0.0) domain_fail("power with non-integer exponent requires positive base", c0);
    double d[4];
    d[0] = std::pow(c0, p);
    d[1] = p * std::pow(c0, p - 1);
    d[2] = p * (p - 1) * std::pow(c0, p - 2);
    d[3] = p * (p - 1) * (p - 2) * std::pow(c0, p - 3);
    Jet w = a;
    w.coeff(0) = 0.0;
    Jet out = Jet::constant(d[0], a.dim(), a.order());
    if (a.order() >= 1) {
        const Jet w2 = w * w;
        out += w * d[1];
        out += w2 * (d[2] / 2.0);
        out += (w2 * w) * (d[3] / 6.0);
    }
    return out;
}

Jet jet_compose(Func fn, const Jet& a) {
    const double c0 = a.value();
    double d[4] = {0, 0, 0, 0};
    switch (fn) {
        case Func::sin:
            d[0] = std::sin(c0); d[1] = std::cos(c0); d[2] = -d[0]; d[3] = -d[1];
            break;
        case Func::cos:
            d[0] = std::cos(c0); d[1] = -std::sin(c0); d[2] = -d[0]; d[3] = -d[1];
            break;
        case Func::tan: {
            const double c = std::cos(c0);
            if (std::abs(c) <= 1e-14) domain_fail("tan evaluated at a pole", c0);
            const double t = std::tan(c0);
            const double s2 = 1.0 + t * t;
            d[0] = t; d[1] = s2; d[2] = 2.0 * t * s2; d[3] = 2.0 * s2 * s2 + 4.0 * t * t * s2;
            break;
        }
        case Func::exp:
            d[0] = d[1] = d[2] = d[3] = std::exp(c0);
            break;
        case Func::log:
            if (c0 <= 0.0) domain_fail("log of non-positive value", c0);
            d[0] = std::log(c0); d[1] = 1.0 / c0; d[2] = -1.0 / (c0 * c0); d[3] = 2.0 / (c0 * c0 * c0);
            break;
        case Func::sinh:
            d[0] = std::sinh(c0); d[1] = std::cosh(c0); d[2] = d[0]; d[3] = d[1];
            break;
        case Func::cosh:
            d[0] = std::cosh(c0); d[1] = std::sinh(c0); d[2] = d[0]; d[3] = d[1];
            break;
        case Func::tanh: {
            const double th = std::tanh(c0);
            const double sech2 = 1.0 - th * th;
            d[0] = th; d[1] = sech2; d[2] = -2.0 * th * sech2;
            d[3] = -2.0 * sech2 * sech2 + 4.0 * th * th * sech2;
            break;
        }
        case Func::sqrt: {
            if (c0 <= 0.0) domain_fail("sqrt of non-positive value", c0);
            const double s = std::sqrt(c0);
            d[0] = s; d[1] = 0.5 / s; d[2] = -0.25 / (s * c0); d[3] = 0.375 / (s * c0 * c0);
            break;
        }
    }
    Jet w = a;
    w.coeff(0) = 0.0;
    Jet out = Jet::constant(d[0], a.dim(), a.order());
    if (a.order() >= 1) {
        const Jet w2 = w * w;
        out += w * d[1];
        out += w2 * (d[2] / 2.0);
        out += (w2 * w) * (d[3] / 6.0);
    }
    return out;
}

Jet jet_derivative(const Jet& a, int var) {
    if (var < 0 || var >= a.dim()) throw Error("derivative variable index out of range");
    if (a.order() == 0) throw Error("cannot differentiate an order-0 jet");
    const auto& t = MultiIndexTable::get(a.dim());
    Jet out(a.dim(), a.order() - 1);
    const int m = out.coeff_count();
    for (int p = 0; p < m; ++p) {
        const int up = t.shift_up(p, var);
        // c'_alpha = (alpha_var + 1) c_{alpha + e_var}
        const double mult = t.exponents(up)[static_cast<std::size_t>(var)];
        out.coeff(p) = mult * a.coeff(up);
    }
    return out;
}

Jet jet_variable(int var_index, double value, int dim, int order) {
    return Jet::variable(var_index, value, dim, order);
}

Jet jet_arith(JetOp op, const Jet& a, const Jet& b) {
    if (a.dim() != b.dim() || a.order() != b.order())
        throw Error("jet_arith operands must share dimension and order (got dim " +
                    std::to_string(a.dim()) + "/" + std::to_string(b.dim()) + ", order " +
                    std::to_string(a.order()) + "/" + std::to_string(b.order()) + ")");
    switch (op) {
        case JetOp::add: return a + b;
        case JetOp::sub: return a - b;
        case JetOp::mul: return a * b;
        case JetOp::div: return a / b;
    }
    throw Error("unknown jet operation");
}

double partial(const Jet& a, std::span<const int> alpha) { return a.partial(alpha); }

} // namespace einlike
