#include "tetra/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "tetra/errors.hpp"

namespace tetra {

Distances distances(const PauliVector& a, const PauliVector& b) {
    require_physical(a);
    require_physical(b);
    const double d = 0.5 * (a - b).norm();
    return {d, d};
}

double uhlmann_fidelity(const PauliVector& a, const PauliVector& b) {
    require_physical(a);
    require_physical(b);
    const double dot = a.dot(b);
    const double r2 = std::max(0.0, (a + b).squaredNorm() - a.cross(b).squaredNorm());
    const double r = std::sqrt(r2);
    const double up = std::max(0.0, 1.0 + dot + r);
    const double dn = std::max(0.0, 1.0 + dot - r);
    return std::clamp(0.5 * (std::sqrt(up) + std::sqrt(dn)), 0.0, 1.0);
}

double kappa_squared(const Probabilities4& p) {
    double p2 = 0.0, p3 = 0.0;
    for (double v : p.p) {
        p2 += v * v;
        p3 += v * v * v;
    }
    return 2.0 * p3 - 2.0 * p2 * p2;
}

double kappa_squared_aligned(double s, bool parallel) {
    return parallel ? (1.0 + s) * (3.0 - s) * s * s / 72.0
                    : (1.0 - s) * (3.0 + s) * s * s / 72.0;
}

double kappa_squared_saddle(double s) { return (3.0 - s * s) * s * s / 72.0; }

double mean_sum_squared_frequencies(const PauliVector& s, const TetraFrame& frame,
                                    std::uint64_t n_clicks) {
    (void)frame;  // rotation-invariant
    const double s2 = s.squaredNorm();
    const double n = static_cast<double>(n_clicks);
    return 1.0 / 3.0 - (1.0 - s2) / 12.0 + (9.0 - s2) / (12.0 * n);
}

double violation_probability(const PauliVector& s, const TetraFrame& frame,
                             std::uint64_t n_clicks) {
    require_physical(s);
    const Probabilities4 p = outcome_probabilities(s, frame);
    const double k2 = kappa_squared(p);
    if (k2 <= 0.0)
        throw KappaZero("violation probability undefined at kappa = 0; "
                        "the exact limits are 1 (anti-aligned pure) and 0 (maximally mixed)");
    const double n = static_cast<double>(n_clicks);
    const double arg = std::sqrt(n) / (2.0 * std::sqrt(k2)) *
                       (mean_sum_squared_frequencies(s, frame, n_clicks) - 1.0 / 3.0);
    return 0.5 + 0.5 * std::erf(arg);
}

FisherMatrix fisher_information(const PauliVector& s, const TetraFrame& frame,
                                std::uint64_t n_clicks) {
    const Probabilities4 p = outcome_probabilities(s, frame);
    Mat3 info = Mat3::Zero();
    for (int j = 0; j < 4; ++j) {
        if (p[j] <= 1e-12)
            throw SingularInformation("outcome probability vanished; Fisher matrix singular");
        info += frame.vec(j) * frame.vec(j).transpose() / p[j];
    }
    return static_cast<double>(n_clicks) / 16.0 * info;
}

Mat3 covariance_dyadic(const PauliVector& s, const TetraFrame& frame) {
    const Probabilities4 p = outcome_probabilities(s, frame);
    Mat3 k = Mat3::Zero();
    for (int j = 0; j < 4; ++j) {
        k += p[j] * frame.vec(j) * frame.vec(j).transpose();
        for (int l = 0; l < 4; ++l)
            k -= p[j] * p[l] * frame.vec(j) * frame.vec(l).transpose();
    }
    return 9.0 * k;
}

double err_pure_generic(const Probabilities4& p, std::uint64_t n_clicks) {
    const double k2 = kappa_squared(p);
    if (k2 <= 0.0) throw DomainError("err_pure_generic requires kappa^2 > 0");
    double p4 = 0.0;
    for (double v : p.p) p4 += v * v * v * v;
    const double n = static_cast<double>(n_clicks);
    return 4.0 / n - 2.0 / (9.0 * n * k2) * (27.0 * p4 - 1.0);
}

double mean_uhlmann_asymptotic(const PauliVector& s, const TetraFrame& frame,
                               std::uint64_t n_clicks) {
    const double s2 = s.squaredNorm();
    if (s2 >= 1.0) throw DomainError("mean Uhlmann asymptotics require s < 1");
    const double k2 = kappa_squared(outcome_probabilities(s, frame));
    const double n = static_cast<double>(n_clicks);
    return 1.0 - (9.0 - s2) / (8.0 * n) - 9.0 * k2 / (n * (1.0 - s2));
}

double mean_uhlmann_antialigned(double s, std::uint64_t n_clicks) {
    const double n = static_cast<double>(n_clicks);
    return 1.0 - (3.0 + s) * (3.0 + 2.0 * s) / (8.0 * n * (1.0 + s));
}

PredictionSet predictions(const PauliVector& s, const TetraFrame& frame,
                          std::uint64_t n_clicks) {
    require_physical(s);
    if (n_clicks == 0) throw DomainError("predictions require N >= 1");

    const double n = static_cast<double>(n_clicks);
    const double len = s.norm();
    const double s2 = len * len;
    const bool pure = std::abs(len - 1.0) <= kApiTol;

    double par_err = 2.0, anti_err = 2.0, axis_err = 2.0;
    if (len > kApiTol) {
        const Vec3 dir = s / len;
        for (int j = 0; j < 4; ++j) {
            par_err = std::min(par_err, (frame.vec(j) - dir).norm());
            anti_err = std::min(anti_err, (frame.vec(j) + dir).norm());
        }
        // six-state axes taken as the frame rotation's image of x, y, z
        for (int xi = 0; xi < 3; ++xi) {
            const Vec3 ax = frame.rotation().col(xi);
            axis_err = std::min({axis_err, (ax - dir).norm(), (ax + dir).norm()});
        }
    }
    const bool parallel = pure && par_err <= kApiTol;
    const bool antiparallel = anti_err <= kApiTol;
    const Probabilities4 p = outcome_probabilities(s, frame);
    const double k2 = kappa_squared(p);

    PredictionSet out;
    out.msd_generic = {(9.0 - s2) / n, len < 1.0 - kApiTol};
    out.msd_antialigned = {2.0 / n, pure && antiparallel};
    out.msd_six = {(9.0 - 3.0 * s2) / n, len < 1.0 - kApiTol};
    out.msd_six_privileged = {8.0 / (3.0 * n), pure && axis_err <= kApiTol};
    out.d_opt = {(9.0 - s2) / n, true};
    out.mean_uhlmann = {len < 1.0 - kApiTol ? mean_uhlmann_asymptotic(s, frame, n_clicks) : 0.0,
                        len < 1.0 - kApiTol};
    out.mean_uhlmann_anti = {len < 1.0 - kApiTol ? mean_uhlmann_antialigned(len, n_clicks) : 0.0,
                             antiparallel && len < 1.0 - kApiTol};
    out.err_pure_parallel = {1.0 / n, parallel};
    out.err_pure_antiparallel = {0.5 / n, pure && antiparallel};
    out.err_pure_generic = {k2 > 0.0 ? err_pure_generic(p, n_clicks) : 0.0, pure && k2 > 0.0};
    out.err_pure_limit_kappa0 = {4.0 / (3.0 * n), true};
    out.quantum_limit = {(n + 1.0) / (n + 2.0), true};
    const double pmin = *std::min_element(p.p.begin(), p.p.end());
    out.smin_premeasure = {1.0 - 4.0 * pmin, true};
    return out;
}

} // namespace tetra
