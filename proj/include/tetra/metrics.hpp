#pragma once

#include <cstdint>

#include "tetra/bloch.hpp"

namespace tetra {

/// Trace-class and Hilbert-Schmidt distances; for single qubits both equal
/// |S - s| / 2.
struct Distances {
    double trace = 0.0;
    double hilbert_schmidt = 0.0;
};

Distances distances(const PauliVector& a, const PauliVector& b);

/// Uhlmann fidelity Tr |sqrt(rho1) sqrt(rho2)| from the closed qubit form
///   U = (1/2) sqrt(1 + a.b + R) + (1/2) sqrt(1 + a.b - R),
///   R = sqrt((a+b)^2 - (a x b)^2).
double uhlmann_fidelity(const PauliVector& a, const PauliVector& b);

/// kappa^2 = 2 sum p^3 - 2 (sum p^2)^2, the orientation-dependent cumulant
/// controlling the inequality-violation statistics.
double kappa_squared(const Probabilities4& p);

/// Extremal kappa^2 for a state of length s aligned (+) or anti-aligned (-)
/// with a quartet vector: (1 +- s)(3 -+ s) s^2 / 72.
double kappa_squared_aligned(double s, bool parallel);

/// Saddle-point kappa^2 for s along the bisector of two quartet vectors:
/// (3 - s^2) s^2 / 72.
double kappa_squared_saddle(double s);

/// Large-N probability that sampled frequencies violate sum nu^2 <= 1/3:
///   1/2 + (1/2) erf( sqrt(N)/(2 kappa) (mean sum nu^2 - 1/3) ).
/// Throws KappaZero when kappa vanishes (exact limits 1 and 0 apply there).
double violation_probability(const PauliVector& s, const TetraFrame& frame,
                             std::uint64_t n_clicks);

/// Mean of sum nu_j^2 over the multinomial ensemble (exact in N).
double mean_sum_squared_frequencies(const PauliVector& s, const TetraFrame& frame,
                                    std::uint64_t n_clicks);

using FisherMatrix = Mat3;

/// Multinomial Fisher information N sum_j (1/p_j) (a_j/4)(a_j/4)^T.
/// Throws SingularInformation when an outcome probability vanishes.
FisherMatrix fisher_information(const PauliVector& s, const TetraFrame& frame,
                                std::uint64_t n_clicks);

/// Covariance dyadic K = 9 sum_jk a_j (delta_jk p_j - p_j p_k) a_k^T of the
/// large-N estimator fluctuations (per ensemble member; divide by N).
Mat3 covariance_dyadic(const PauliVector& s, const TetraFrame& frame);

// ---------------------------------------------------------------------------
// Closed-form asymptotics
// ---------------------------------------------------------------------------

/// Pure-state mean error 1 - F for a generic orientation with kappa^2 > 0:
///   4/N - (2 / (9 N kappa^2)) (27 sum p^4 - 1).
/// Throws DomainError when kappa^2 is not positive.
double err_pure_generic(const Probabilities4& p, std::uint64_t n_clicks);

/// Asymptotic mean Uhlmann fidelity for mixed states,
///   1 - (9 - s^2)/(8N) - 9 kappa^2 / (N (1 - s^2)).
/// Throws DomainError for pure states.
double mean_uhlmann_asymptotic(const PauliVector& s, const TetraFrame& frame,
                               std::uint64_t n_clicks);

/// Anti-aligned specialization 1 - (3+s)(3+2s) / (8N(1+s)).
double mean_uhlmann_antialigned(double s, std::uint64_t n_clicks);

/// One closed-form prediction with an applicability flag; inapplicable
/// fields keep their numeric value when finite but are marked invalid.
struct Prediction {
    double value = 0.0;
    bool valid = false;
};

/// Every closed-form benchmark the asymptotic analysis provides, evaluated
/// for a given state, frame orientation and ensemble size.
struct PredictionSet {
    Prediction msd_generic;            // (9 - s^2)/N
    Prediction msd_antialigned;        // 2/N, pure anti-aligned only
    Prediction msd_six;                // (9 - 3 s^2)/N
    Prediction msd_six_privileged;     // 8/(3N), pure on a measured axis
    Prediction d_opt;                  // (9 - s^2)/N, optimal four-outcome POVM
    Prediction mean_uhlmann;           // asymptotic mean fidelity, s < 1
    Prediction mean_uhlmann_anti;      // anti-aligned specialization
    Prediction err_pure_parallel;      // 1/N
    Prediction err_pure_antiparallel;  // 1/(2N)
    Prediction err_pure_generic;       // kappa-dependent pure-state error
    Prediction err_pure_limit_kappa0;  // 4/(3N), the kappa^2 -> 0+ limit
    Prediction quantum_limit;          // fidelity bound (N+1)/(N+2)
    Prediction smin_premeasure;        // 1 - 4 delta/N with delta = N min_j p_j
};

PredictionSet predictions(const PauliVector& s, const TetraFrame& frame,
                          std::uint64_t n_clicks);

} // namespace tetra
