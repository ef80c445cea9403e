#pragma once

#include <cstdint>
#include <cmath>

#include "polyapprox/linalg.hpp"

namespace pa {

// Identifies one reproducible random stream. Identical (seed, stream) pairs
// reproduce identical draws; distinct streams are independently seeded
// through splitmix64, which is how parallel trials stay scheduling-free.
struct RandomSource {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// xoshiro256++ with splitmix64 seeding. All distributions are hand-rolled on
// top of next() so output is bit-identical across platforms; std::
// distributions are implementation-defined and would break the byte-exact
// CSV contract.
class Rng {
public:
    explicit Rng(RandomSource rs) {
        std::uint64_t x = rs.seed ^ (rs.stream * 0x9E3779B97F4A7C15ULL + 0x6A09E667F3BCC909ULL);
        for (auto& si : s_) si = splitmix(x);
        for (int i = 0; i < 8; ++i) next();
    }
    Rng(std::uint64_t seed, std::uint64_t stream) : Rng(RandomSource{seed, stream}) {}

    std::uint64_t next() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform on [0,1)
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    std::uint64_t below(std::uint64_t n) { return next() % n; } // n small, bias negligible

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    double exponential() { return -std::log(1.0 - uniform01()); }

    Vec gaussian(int n) {
        Vec v(static_cast<std::size_t>(n));
        for (auto& x : v) x = normal();
        return v;
    }

    // uniform direction on S^{n-1}
    Vec sphere_dir(int n) {
        for (;;) {
            Vec g = gaussian(n);
            double nn = norm2(g);
            if (nn > 1e-12) return scale(g, 1.0 / nn);
        }
    }

private:
    static std::uint64_t splitmix(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace pa
