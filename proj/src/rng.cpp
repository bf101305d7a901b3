#include "trackstat/rng.hpp"

namespace trackstat {

BigInt Rng::uniform_below(const BigInt& n) {
    if (n <= 1) return 0;
    const std::size_t bits = msb(n) + 1;  // n needs `bits` bits
    const std::size_t words = (bits + 63) / 64;
    while (true) {
        BigInt r = 0;
        for (std::size_t w = 0; w < words; ++w) {
            r <<= 64;
            r += next_u64();
        }
        r >>= (words * 64 - bits);
        if (r < n) return r;
    }
}

std::uint64_t Rng::uniform_u64(std::uint64_t n) {
    if (n <= 1) return 0;
    // power-of-two mask rejection
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    while (true) {
        std::uint64_t r = next_u64() & mask;
        if (r < n) return r;
    }
}

}  // namespace trackstat
