#pragma once

#include <cstdint>
#include <random>

namespace phenosim {

// 64-bit avalanche mixer (the splitmix64 finalizer). Used for seed
// derivation so that substreams are decorrelated and bit-exact across
// platforms.
inline std::uint64_t avalanche64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seeded random stream with portable output. The engine (mt19937_64) is
// fully specified by the standard; the double and bounded-integer mappings
// below are our own, so identical seeds give identical draws on every
// platform. std::uniform_*_distribution is deliberately avoided (its
// output is implementation-defined).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    // Unbiased uniform integer in [0, bound). Lemire's multiply-shift with
    // rejection of the biased low range.
    std::uint64_t next_below(std::uint64_t bound) {
        std::uint64_t x = engine_();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                x = engine_();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace phenosim
