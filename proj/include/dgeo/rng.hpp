#pragma once

#include <cstdint>

namespace dgeo {

// SplitMix64: tiny, fast, and statistically solid enough for Monte Carlo
// walk sampling. One instance per logical stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound) by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t bound) noexcept {
        std::uint64_t threshold = -bound % bound;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

// Counter-based stream derivation: hashes (seed, a, b) into an independent
// stream seed, so walker b started at vertex a draws the same numbers no
// matter how work is scheduled across threads.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 mix(seed ^ 0x6a09e667f3bcc908ULL);
    std::uint64_t x = mix.next();
    SplitMix64 mix_a(x ^ (a * 0x9e3779b97f4a7c15ULL + 0xd1b54a32d192ed03ULL));
    x = mix_a.next();
    SplitMix64 mix_b(x ^ (b * 0xbf58476d1ce4e5b9ULL + 0x2545f4914f6cdd1dULL));
    return mix_b.next();
}

}  // namespace dgeo
