#pragma once
//
// Deterministic SplitMix64-based generators. The stream generator is used for
// sampling test data; the keyed form maps (seed, key_a, key_b) to a uniform
// double so that random kernels are reproducible entry by entry.
//

#include <cstdint>
#include <limits>

#include "lattice.hpp"

namespace nctorus {

inline constexpr std::uint64_t splitmix_gamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64_mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Top 53 bits to [0, 1).
inline double to_unit_interval(std::uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

/// UniformRandomBitGenerator over the SplitMix64 sequence.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        state_ += splitmix_gamma;
        return splitmix64_mix(state_);
    }

    double uniform() { return to_unit_interval((*this)()); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Child generator with an independent stream.
    SplitMix64 split() { return SplitMix64(splitmix64_mix((*this)() ^ 0x6A09E667F3BCC909ULL)); }

private:
    std::uint64_t state_;
};

/// Uniform [0, 1) from the counter pair (key_a, key_b) under `seed`.
inline double keyed_uniform(std::uint64_t seed, std::uint64_t key_a, std::uint64_t key_b)
{
    std::uint64_t h = splitmix64_mix(seed + splitmix_gamma);
    h = splitmix64_mix(h ^ (key_a + splitmix_gamma));
    h = splitmix64_mix(h ^ (key_b + 2 * splitmix_gamma));
    return to_unit_interval(h);
}

/// Radius of the reference box used to key random streams. A lattice point keeps
/// the same key whatever truncation box it is sampled in.
inline constexpr int reference_radius = 1024;

inline std::uint64_t lattice_key(const MultiIndex& m)
{
    std::uint64_t key = 0;
    for (int v : m.entries())
        key = key * std::uint64_t(2 * reference_radius + 1) + std::uint64_t(v + reference_radius);
    return key;
}

} // namespace nctorus
