#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace caea {

// SplitMix64 (Steele/Lea/Flood; as specified by Vigna). Chosen over the
// <random> engines because std::shuffle and the standard distributions are
// implementation-defined; every draw here is pinned bit-for-bit so result
// files reproduce across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound) via rejection sampling; unbiased for any bound
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

    // uniform in [0, 1) with 53 random bits
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // standard normal, Box-Muller on two fresh draws (used by test fixtures)
    double next_gaussian() {
        double u = next_double();
        while (u <= 0.0) u = next_double();
        const double v = next_double();
        const double two_pi = 6.283185307179586;
        return std::sqrt(-2.0 * std::log(u)) * std::cos(two_pi * v);
    }

private:
    std::uint64_t state_;
};

// Sub-seed derivation: seed and two stream tags run through the SplitMix64
// output function. Fixed rule so (seed, repeat, fold) always maps to the
// same stream on every platform.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a,
                                 std::uint64_t tag_b) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (tag_a + 1)));
    std::uint64_t s = g.next();
    SplitMix64 h(s ^ (0xc2b2ae3d27d4eb4fULL * (tag_b + 1)));
    return h.next();
}

// Fisher-Yates, descending index, swap target drawn with below()
template <typename T>
void shuffle_in_place(std::vector<T>& values, SplitMix64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(values[i - 1], values[j]);
    }
}

}  // namespace caea
