#include "einlike/multi_index.hpp"

#include "einlike/errors.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace einlike {

namespace {

// Recursively emit all exponent tuples of exact degree `deg` over `dim` vars,
// lexicographically by exponent tuple.
void emit_degree(int dim, int deg, int var, std::vector<std::uint8_t>& current,
                 std::vector<std::vector<std::uint8_t>>& out) {
    if (var == dim - 1) {
        current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(deg);
        out.push_back(current);
        return;
    }
    for (int e = deg; e >= 0; --e) {
        current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
        emit_degree(dim, deg - e, var + 1, current, out);
    }
}

} // namespace

int MultiIndexTable::coeff_count(int dim, int order) {
    // C(dim + order, order) for the small orders used here
    long long c = 1;
    for (int k = 1; k <= order; ++k) c = c * (dim + k) / k;
    return static_cast<int>(c);
}

MultiIndexTable::MultiIndexTable(int dim) : dim_(dim) {
    std::vector<std::vector<std::uint8_t>> all;
    std::vector<std::uint8_t> current(static_cast<std::size_t>(dim), 0);
    prefix_.assign(kMaxOrder + 1, 0);
    for (int deg = 0; deg <= kMaxOrder; ++deg) {
        emit_degree(dim, deg, 0, current, all);
        prefix_[static_cast<std::size_t>(deg)] = static_cast<int>(all.size());
    }

    const int m = static_cast<int>(all.size());
    exps_.resize(static_cast<std::size_t>(m) * dim_);
    degree_.resize(static_cast<std::size_t>(m));
    fact_.resize(static_cast<std::size_t>(m));
    std::map<std::vector<std::uint8_t>, int> pos;
    for (int p = 0; p < m; ++p) {
        int deg = 0;
        double f = 1.0;
        for (int v = 0; v < dim_; ++v) {
            const std::uint8_t e = all[static_cast<std::size_t>(p)][static_cast<std::size_t>(v)];
            exps_[static_cast<std::size_t>(p) * dim_ + static_cast<std::size_t>(v)] = e;
            deg += e;
            for (int k = 2; k <= e; ++k) f *= k;
        }
        degree_[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(deg);
        fact_[static_cast<std::size_t>(p)] = f;
        pos[all[static_cast<std::size_t>(p)]] = p;
    }

    prod_.assign(static_cast<std::size_t>(m) * m, -1);
    std::vector<std::uint8_t> sum(static_cast<std::size_t>(dim_));
    for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
            if (degree_[static_cast<std::size_t>(p)] + degree_[static_cast<std::size_t>(q)] > kMaxOrder) continue;
            for (int v = 0; v < dim_; ++v)
                sum[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(
                    exps_[static_cast<std::size_t>(p) * dim_ + static_cast<std::size_t>(v)] +
                    exps_[static_cast<std::size_t>(q) * dim_ + static_cast<std::size_t>(v)]);
            prod_[static_cast<std::size_t>(p) * m + static_cast<std::size_t>(q)] = pos.at(sum);
        }
    }

    shift_.assign(static_cast<std::size_t>(m) * dim_, -1);
    for (int p = 0; p < m; ++p) {
        if (degree_[static_cast<std::size_t>(p)] >= kMaxOrder) continue;
        for (int v = 0; v < dim_; ++v) {
            for (int u = 0; u < dim_; ++u) sum[static_cast<std::size_t>(u)] = exps_[static_cast<std::size_t>(p) * dim_ + static_cast<std::size_t>(u)];
            sum[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(sum[static_cast<std::size_t>(v)] + 1);
            shift_[static_cast<std::size_t>(p) * dim_ + static_cast<std::size_t>(v)] = pos.at(sum);
        }
    }
}

int MultiIndexTable::position(std::span<const int> alpha) const {
    int deg = 0;
    for (int a : alpha) deg += a;
    if (deg > kMaxOrder) return -1;
    // linear scan within the degree band; tables are tiny
    const int lo = deg == 0 ? 0 : prefix_[static_cast<std::size_t>(deg - 1)];
    const int hi = prefix_[static_cast<std::size_t>(deg)];
    for (int p = lo; p < hi; ++p) {
        bool match = true;
        for (int v = 0; v < dim_; ++v) {
            if (exps_[static_cast<std::size_t>(p) * dim_ + static_cast<std::size_t>(v)] != alpha[static_cast<std::size_t>(v)]) {
                match = false;
                break;
            }
        }
        if (match) return p;
    }
    return -1;
}

const MultiIndexTable& MultiIndexTable::get(int dim) {
    if (dim < 1 || dim > kMaxDim)
        throw Error("jet dimension " + std::to_string(dim) + " out of supported range [1, " +
                    std::to_string(kMaxDim) + "]");
    static std::mutex mutex;
    static std::unique_ptr<MultiIndexTable> cache[kMaxDim + 1];
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[dim];
    if (!slot) slot.reset(new MultiIndexTable(dim));
    return *slot;
}

} // namespace einlike
