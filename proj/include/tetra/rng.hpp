#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>

namespace tetra {

// Deterministic random source. The engine is std::mt19937_64, whose output
// sequence is fully specified by the C++ standard, and every derived quantity
// below is computed from raw 64-bit words by fixed arithmetic. Identical
// seeds therefore give bit-identical streams on any conforming platform,
// which is the reproducibility contract for published CSVs (seed + algorithm
// name, not platform). Not safe to share one instance across threads;
// parallel trials take independently seeded instances.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    static constexpr const char* algorithm() { return "mt19937_64"; }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t raw() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via the Marsaglia polar method.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    /// Uniformly distributed point on the unit sphere.
    Eigen::Vector3d unit_vector() {
        Eigen::Vector3d v;
        double n2;
        do {
            v << normal(), normal(), normal();
            n2 = v.squaredNorm();
        } while (n2 < 1e-300);
        return v / std::sqrt(n2);
    }

    /// Uniformly distributed point in the closed unit ball
    /// (radius by inverse transform, r = u^{1/3}).
    Eigen::Vector3d ball_point() { return std::cbrt(uniform()) * unit_vector(); }

    /// One categorical draw by inverse CDF over p[0..n-1]; assumes sum(p) ~= 1.
    int categorical(const double* p, int n) {
        const double u = uniform();
        double acc = 0.0;
        for (int i = 0; i < n - 1; ++i) {
            acc += p[i];
            if (u < acc) return i;
        }
        return n - 1;
    }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace tetra
