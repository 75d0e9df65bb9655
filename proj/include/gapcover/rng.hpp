// rng.hpp
// Named random streams. Every random draw in the library comes from a stream
// keyed by (master seed, tag, index), so results do not depend on the order
// or thread in which streams are consumed.
//
//   stream state seed = splitmix64(splitmix64(splitmix64(master) ^ tag) ^ index)
//
// The engine is std::mt19937_64; uniform variates are derived from the raw
// 64-bit output by hand so they are identical across standard libraries.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace gapcover {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream tags. Values are part of the reproducibility contract.
enum class StreamTag : std::uint64_t {
    Stage2 = 2,
    Stage3Rounds = 31,
    Stage3Independent = 32,
    Stage3Greedy = 33,
    Stage3Nibble = 34,
    NibbleRound = 40,
    Independent = 41,
    Instance = 50,
    Integrals = 60,
    Bootstrap = 61,
    Diagnostics = 62,
    Test = 99,
};

constexpr std::uint64_t stream_seed(std::uint64_t master, StreamTag tag, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(master) ^ static_cast<std::uint64_t>(tag)) ^ index);
}

class RandomStream {
public:
    RandomStream(std::uint64_t master, StreamTag tag, std::uint64_t index = 0)
        : engine_(stream_seed(master, tag, index)) {}
    explicit RandomStream(std::uint64_t raw_seed) : engine_(raw_seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n); n > 0. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do v = engine_(); while (v >= limit);
        return v % n;
    }

    // Standard exponential variate.
    double exponential() { return -std::log1p(-uniform()); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace gapcover
