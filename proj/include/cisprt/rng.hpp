#pragma once

// Seeded, substream-capable random number generation for reproducible
// parallel Monte Carlo. Substreams are derived by hashing a tuple of
// integer fields (master seed, trial index, agent index, ...) with a
// splitmix64 finalizer, so trial results do not depend on scheduling
// order or worker count.

#include <cstdint>
#include <cmath>

namespace cisprt {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Order-sensitive hash combine of 64-bit fields.
inline std::uint64_t mix_seed(std::uint64_t a) {
    std::uint64_t s = a;
    return splitmix64(s);
}

template <class... Rest>
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, Rest... rest) {
    std::uint64_t s = a ^ (0x9E3779B97F4A7C15ull + (b << 6) + (b >> 2));
    s = splitmix64(s) ^ b;
    return mix_seed(s, rest...);
}

// xoshiro256++ (Blackman & Vigna), seeded via splitmix64.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed = 0) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ull; }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe as a log() argument.
    double uniform01_open() {
        return (static_cast<double>((*this)() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller. Uses two uniforms per variate so the
    // stream position is a pure function of the draw count.
    double standard_normal() {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double normal(double mean, double stddev) { return mean + stddev * standard_normal(); }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

} // namespace cisprt
