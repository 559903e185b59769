#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace landscape {

/// SplitMix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator with platform-independent variates.
///
/// Only the raw 64-bit engine output is standardized by the library, so the
/// uniform, normal and integer variates are derived here rather than through
/// <random> distributions. Identical seeds reproduce identical streams on any
/// conforming implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent stream for (seed, stream) pairs.
    static Rng derive(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller.
    double normal();
    /// +1 or -1 with equal probability.
    double rademacher();
    /// Uniform integer on [0, n), unbiased.
    std::uint64_t below(std::uint64_t n);

    template <typename It>
    void shuffle(It first, It last) {
        auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            auto j = below(i);
            std::swap(first[i - 1], first[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_normal_;
};

} // namespace landscape
