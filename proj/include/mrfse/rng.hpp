#pragma once

#include <cstdint>
#include <vector>

namespace mrfse {

/// Deterministic counter-based generator (SplitMix64).
///
/// Seed-to-stream contract, fixed for reproducibility across implementations:
///   state_0 = seed
///   output_i = mix64(seed + (i+1) * 0x9E3779B97F4A7C15)
/// where
///   mix64(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///             z ^= z >> 27; z *= 0x94D049BB133111EB;
///             z ^= z >> 31; return z.
/// Doubles are produced as (output >> 11) * 2^-53, uniform on [0, 1).
/// Bounded draws use rejection sampling on the top of the 64-bit range,
/// so they consume a variable but deterministic number of outputs.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound), bound >= 1. Unbiased via rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t state_;
};

/// Child-stream derivation rule: the i-th derived seed is the i-th output of
/// the master stream, i.e. derive_seed(m, i) = mix64(m + (i+1) * GAMMA).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// In-place Fisher-Yates shuffle driven by a SplitMix64 stream.
template <typename T>
void shuffle_with(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace mrfse
