#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace einlike {

/// SplitMix64: the deterministic generator behind all randomized sampling.
/// Same seed, same stream, on every platform.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

enum class SampleMode { random, grid };

struct SamplingSpec {
    SampleMode mode = SampleMode::random;
    std::vector<std::pair<std::string, std::array<double, 2>>> ranges;  // per coordinate
    int count = 16;
    std::uint64_t seed = 0;
};

/// Sample points for a chart. `coord_order` fixes the coordinate order of the
/// produced points; every coordinate must have a range. Random mode draws
/// `count` uniform points; grid mode places round(count^(1/n)) points per
/// axis, shrunk 5% from each range boundary.
std::vector<std::vector<double>> draw_samples(const SamplingSpec& spec,
                                              std::span<const std::string> coord_order);

/// Deterministic vector with components uniform in [-1, 1].
std::vector<double> draw_vector(SplitMix64& rng, int dim);

} // namespace einlike
