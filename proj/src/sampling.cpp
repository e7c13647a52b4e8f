#include "einlike/sampling.hpp"

#include "einlike/errors.hpp"

#include <cmath>

namespace einlike {

namespace {

const std::array<double, 2>& range_for(const SamplingSpec& spec, const std::string& coord) {
    for (const auto& [name, range] : spec.ranges)
        if (name == coord) return range;
    throw InputError("sampling ranges do not cover coordinate '" + coord + "'");
}

} // namespace

std::vector<std::vector<double>> draw_samples(const SamplingSpec& spec,
                                              std::span<const std::string> coord_order) {
    const int n = static_cast<int>(coord_order.size());
    std::vector<const std::array<double, 2>*> ranges;
    ranges.reserve(static_cast<std::size_t>(n));
    for (const std::string& c : coord_order) {
        const auto& r = range_for(spec, c);
        if (!(r[0] < r[1]))
            throw InputError("empty sampling range for coordinate '" + c + "'");
        ranges.push_back(&r);
    }
    if (spec.count < 1) throw InputError("sampling count must be positive");

    std::vector<std::vector<double>> points;
    if (spec.mode == SampleMode::random) {
        SplitMix64 rng(spec.seed);
        points.reserve(static_cast<std::size_t>(spec.count));
        for (int s = 0; s < spec.count; ++s) {
            std::vector<double> p(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i)
                p[static_cast<std::size_t>(i)] = rng.uniform((*ranges[static_cast<std::size_t>(i)])[0],
                                                             (*ranges[static_cast<std::size_t>(i)])[1]);
            points.push_back(std::move(p));
        }
        return points;
    }

    // grid: per-axis count, 5% shrink from each boundary
    const int per_axis =
        std::max(1, static_cast<int>(std::lround(std::pow(static_cast<double>(spec.count), 1.0 / n))));
    std::vector<std::vector<double>> axes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double lo = (*ranges[static_cast<std::size_t>(i)])[0];
        const double hi = (*ranges[static_cast<std::size_t>(i)])[1];
        const double margin = 0.05 * (hi - lo);
        const double a = lo + margin, b = hi - margin;
        auto& axis = axes[static_cast<std::size_t>(i)];
        if (per_axis == 1) {
            axis.push_back(0.5 * (a + b));
        } else {
            for (int k = 0; k < per_axis; ++k)
                axis.push_back(a + (b - a) * k / (per_axis - 1));
        }
    }
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    while (true) {
        std::vector<double> p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            p[static_cast<std::size_t>(i)] = axes[static_cast<std::size_t>(i)][static_cast<std::size_t>(
                idx[static_cast<std::size_t>(i)])];
        points.push_back(std::move(p));
        int i = n - 1;
        while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == per_axis) {
            idx[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }
    return points;
}

std::vector<double> draw_vector(SplitMix64& rng, int dim) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] = rng.uniform(-1.0, 1.0);
    return v;
}

} // namespace einlike
