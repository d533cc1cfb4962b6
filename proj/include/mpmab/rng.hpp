#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace mpmab {

// splitmix64, used to expand a seed into well-mixed stream states.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256** with local distribution helpers. Standard-library
// distributions are implementation-defined, so the simulator rolls its own
// to keep traces reproducible across toolchains.
class RandomStream {
public:
    RandomStream() : RandomStream(0, 0, 0) {}

    // Streams are keyed by (seed, replication, purpose) so replications can
    // run in any order and still read the same numbers.
    RandomStream(std::uint64_t seed, std::uint64_t replication, std::uint64_t purpose) {
        std::uint64_t mix = seed;
        mix ^= 0xA0761D6478BD642FULL * (replication + 1);
        mix ^= 0xE7037ED1A0B428DBULL * (purpose + 0x9E3779B97F4A7C15ULL);
        for (auto& word : state_) word = splitmix64(mix);
        has_spare_normal_ = false;
        spare_normal_ = 0.0;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1), safe as a log() argument.
    double uniform_open() {
        double u;
        do { u = uniform01(); } while (u <= 0.0);
        return u;
    }

    // Uniform integer in [0, n).
    std::uint64_t uniform_below(std::uint64_t n) {
        // Rejection sampling kills the modulo bias.
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do { v = next_u64(); } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Marsaglia polar method with one cached spare.
    double normal() {
        if (has_spare_normal_) {
            has_spare_normal_ = false;
            return spare_normal_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double scale = std::sqrt(-2.0 * std::log(s) / s);
        spare_normal_ = v * scale;
        has_spare_normal_ = true;
        return u * scale;
    }

    double normal(double mean, double variance) { return mean + std::sqrt(variance) * normal(); }

    // Marsaglia-Tsang for shape >= 1; boosted for shape < 1.
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = uniform_open();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_open();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Beta sampler with cheap paths for the posterior shapes Thompson
    // sampling hits most often.
    double beta(double a, double b) {
        if (a == 1.0 && b == 1.0) return uniform01();
        if (a == 1.0) return 1.0 - std::pow(uniform_open(), 1.0 / b);
        if (b == 1.0) return std::pow(uniform_open(), 1.0 / a);
        const double x = gamma(a);
        const double y = gamma(b);
        return x / (x + y);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    bool has_spare_normal_;
    double spare_normal_;
};

}  // namespace mpmab
