#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace flowcast {

/// Seeded random source with a stable draw sequence for a fixed seed.
///
/// The double-valued draws are derived from raw mt19937_64 output instead of
/// the standard distributions, whose draw sequences differ between standard
/// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi) {
        const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + unit * (hi - lo);
    }

    /// Gaussian draw via the Box-Muller transform (one spare cached).
    double gaussian(double mean, double stddev) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + stddev * spare_;
        }
        double u1 = uniform(0.0, 1.0);
        while (u1 <= 0.0) u1 = uniform(0.0, 1.0);
        const double u2 = uniform(0.0, 1.0);
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return mean + stddev * radius * std::cos(angle);
    }

    std::uint64_t next_below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// In-place Fisher-Yates shuffle driven by `rng`.
template <typename T>
void shuffle_values(std::vector<T>& values, Rng& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(values[i - 1], values[j]);
    }
}

/// Mixes a base seed with stream identifiers so derived generators do not
/// overlap (splitmix64 finalizer).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t phase = 0) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1) + 0x632BE59BD9B4E019ull * (phase + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace flowcast
