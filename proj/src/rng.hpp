#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace t2flow {

// SplitMix64. The exact stream is an implementation contract recorded in
// the README so other language ports reproduce identical initial data.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1]
    double uniform01() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }
};

// substream for field k of a sampler seed
inline SplitMix64 field_stream(uint64_t seed, uint64_t k) {
    return SplitMix64(seed ^ ((k + 1) * 0x9E3779B97F4A7C15ull));
}

// Box-Muller pairs over the SplitMix64 uniforms.
struct GaussianStream {
    SplitMix64 rng;
    bool have_spare = false;
    double spare = 0.0;

    explicit GaussianStream(SplitMix64 r) : rng(r) {}

    double next() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = rng.uniform01();
        const double u2 = rng.uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare = r * std::sin(a);
        have_spare = true;
        return r * std::cos(a);
    }
};

} // namespace t2flow
