#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace einlike {

/// Enumeration of all exponent multi-indices over `dim` variables with total
/// degree <= kMaxOrder, in graded order (degree 0 first). Positions with
/// degree <= k always form a prefix, so truncation is a prefix slice.
///
/// Tables are built once per dimension and cached for the process lifetime.
class MultiIndexTable {
public:
    static constexpr int kMaxOrder = 3;
    static constexpr int kMaxDim = 16;

    static const MultiIndexTable& get(int dim);

    int dim() const noexcept { return dim_; }

    /// Total number of multi-indices (degree <= kMaxOrder).
    int size() const noexcept { return static_cast<int>(degree_.size()); }

    /// Number of multi-indices with degree <= order (a prefix of the table).
    int size_at_order(int order) const { return prefix_[static_cast<std::size_t>(order)]; }

    int degree(int pos) const { return degree_[static_cast<std::size_t>(pos)]; }

    /// Exponent tuple of the multi-index at `pos` (length dim()).
    std::span<const std::uint8_t> exponents(int pos) const {
        return {exps_.data() + static_cast<std::size_t>(pos) * dim_, static_cast<std::size_t>(dim_)};
    }

    /// Position of the given exponent tuple, or -1 if degree > kMaxOrder.
    int position(std::span<const int> alpha) const;

    /// Position of the sum of the multi-indices at p and q, or -1 on overflow.
    int product(int p, int q) const {
        return prod_[static_cast<std::size_t>(p) * degree_.size() + static_cast<std::size_t>(q)];
    }

    /// Position of (multi-index at pos) + e_var, or -1 on degree overflow.
    int shift_up(int pos, int var) const {
        return shift_[static_cast<std::size_t>(pos) * dim_ + static_cast<std::size_t>(var)];
    }

    /// alpha! for the multi-index at pos.
    double factorial(int pos) const { return fact_[static_cast<std::size_t>(pos)]; }

    /// Binomial C(dim + order, order): dense jet length for given order.
    static int coeff_count(int dim, int order);

private:
    explicit MultiIndexTable(int dim);

    int dim_;
    std::vector<std::uint8_t> exps_;  // size() * dim exponents
    std::vector<std::uint8_t> degree_;
    std::vector<double> fact_;
    std::vector<int> prefix_;  // prefix_[k] = #indices with degree <= k, k = 0..kMaxOrder
    std::vector<int> prod_;    // size() * size()
    std::vector<int> shift_;   // size() * dim
};

} // namespace einlike
