#pragma once

#include <cstdint>

#include "trackstat/bigint.hpp"

namespace trackstat {

// SplitMix64. Small state, full 64-bit output, passes BigCrush when used as
// a stream; plenty for Monte Carlo work and trivially seedable per sample.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Derives an independent stream for (seed, index) pairs. Used so that
    // sample i sees the same randomness no matter how work is partitioned.
    static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
        Rng mixer(master_seed ^ (0x517cc1b727220a95ULL * (index + 1)));
        std::uint64_t s = mixer.next_u64();
        s ^= mixer.next_u64() << 1;
        return Rng(s);
    }

    // Exactly uniform integer in [0, n). Draws bit-blocks of the minimal
    // width and retries values >= n, so every residue is equally likely.
    BigInt uniform_below(const BigInt& n);

    // Convenience for small ranges.
    std::uint64_t uniform_u64(std::uint64_t n);

private:
    std::uint64_t state_;
};

}  // namespace trackstat
