// Reference generator for seeded examples and Monte Carlo tests: a 64-bit
// LCG whose high 32 bits feed Box-Muller. Fixed here so every port of the
// test suite reproduces identical draws.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace tsecon {

class lcg64 {
public:
    explicit lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ = 6364136223846793005ULL * state_ + 1442695040888963407ULL;
        return state_;
    }

    // Uniform in (0,1) from the high 32 bits.
    double next_uniform() {
        std::uint32_t hi = static_cast<std::uint32_t>(next_u64() >> 32);
        return (static_cast<double>(hi) + 0.5) / 4294967296.0;
    }

    // One standard normal per call; two uniforms, no caching.
    double next_normal() {
        double u1 = next_uniform();
        double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

} // namespace tsecon
