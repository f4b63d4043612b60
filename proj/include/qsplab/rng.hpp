#pragma once

#include <cstdint>
#include <random>

namespace qsplab {

// Seeded random stream with deterministic splitting.
//
// The engine is std::mt19937_64 (bit-exact across platforms); Gaussian and
// uniform deviates are derived here from raw 64-bit draws instead of the
// standard-library distributions, whose output is implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : engine_(mix(seed, stream)), seed_(seed), stream_(stream) {}

    // Independent child stream; child(i) of a given stream is stable.
    RandomStream split(std::uint64_t index) const {
        return RandomStream(mix(seed_, stream_ ^ (0x9e3779b97f4a7c15ULL + index)), index);
    }

    std::uint64_t raw() { return engine_(); }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller on explicit uniforms.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925287 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    std::uint64_t seed() const noexcept { return seed_; }

private:
    // SplitMix64 scrambling; decorrelates (seed, stream) pairs.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
    std::uint64_t seed_;
    std::uint64_t stream_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Worker cap for data-parallel loops: QSPLAB_THREADS, else hardware count.
unsigned worker_count();

}  // namespace qsplab
