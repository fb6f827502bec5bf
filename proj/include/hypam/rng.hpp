#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace hypam {

/// Deterministic RNG. Doubles are derived from raw mt19937_64 output so that
/// streams are reproducible for a fixed seed independent of the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Child stream for index i; independent of draw order in the parent.
    static Rng child(std::uint64_t seed, std::uint64_t index) {
        return Rng(splitmix(seed ^ splitmix(index + 0x9e3779b97f4a7c15ULL)));
    }

    std::uint64_t bits() { return gen_(); }

    /// Uniform in [0,1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        // Box-Muller; caches nothing so the stream stays positionally stable.
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::complex<double> cnormal() { return {normal(), normal()}; }

    /// Uniform on S^3 (unit quaternions).
    void unit_quaternion(double q[4]) {
        double n = 0.0;
        do {
            for (int i = 0; i < 4; ++i) q[i] = normal();
            n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
        } while (n < 1e-12);
        for (int i = 0; i < 4; ++i) q[i] /= n;
    }

    /// Uniform direction on S^2.
    void unit3(double v[3]) {
        double n = 0.0;
        do {
            for (int i = 0; i < 3; ++i) v[i] = normal();
            n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        } while (n < 1e-12);
        for (int i = 0; i < 3; ++i) v[i] /= n;
    }

private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 gen_;
};

} // namespace hypam
