#pragma once

#include <cstdint>
#include <random>

namespace collabpred {

/// Generator contract "collabpred-rng-v1": each simulated case draws from its
/// own mt19937_64 stream seeded with splitmix64(seed, case_index). mt19937_64
/// output is fully specified by the standard and all value mappings below use
/// integer arithmetic only, so streams are identical across platforms.
inline constexpr int kRngVersion = 1;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-case substream; independent of how many cases run or in what order.
class CaseRng {
public:
    CaseRng(std::uint64_t seed, std::uint64_t case_index)
        : engine_(splitmix64(splitmix64(seed) ^ (case_index + 1))) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Unbiased uniform draw in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n) {
        // Lemire's multiply-shift with rejection of the biased low range.
        while (true) {
            const std::uint64_t x = next_u64();
            const unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
            const std::uint64_t low = static_cast<std::uint64_t>(m);
            if (low >= n || low >= (0 - n) % n)
                return static_cast<std::uint64_t>(m >> 64);
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

} // namespace collabpred
