#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tetra/bloch.hpp"
#include "tetra/estimate.hpp"
#include "tetra/rng.hpp"

namespace tetra {

enum class StrategyKind { Static, Premeasure, SelfLearn };
enum class Alignment { Parallel, Antiparallel, Random };

std::string to_string(StrategyKind k);
std::string to_string(Alignment a);
StrategyKind strategy_from_string(const std::string& s);
Alignment alignment_from_string(const std::string& s);

struct StrategyConfig {
    StrategyKind kind = StrategyKind::Static;
    Alignment alignment = Alignment::Parallel;
    std::uint64_t n_clicks = 1;
    double misalignment_deg = 0.0;  // static runs only (known-angle sweeps)
    std::uint64_t seed = 0;
    void validate() const;
};

/// One simulated experiment: estimate against ground truth.
struct TrialResult {
    Estimate estimate;
    PauliVector true_state = PauliVector::Zero();
    double sq_dist = 0.0;    // |S - s|^2
    double fidelity = 0.0;   // squared Uhlmann fidelity; reduces to the
                             // pure-pair form (1 + s.S)/2 on the sphere
    std::uint64_t clicks_used = 0;
};

/// Non-adaptive baseline: one frame, N clicks, maximum-likelihood estimate.
TrialResult run_static(const PauliVector& s, const TetraFrame& frame,
                       std::uint64_t n_clicks, Rng& rng);

/// Two-stage strategy: the first floor(N/2) clicks with the reference frame
/// fix a direction, the rest are measured with the frame anti-aligned to it,
/// and only the second half enters the final estimate.
TrialResult run_premeasure(const PauliVector& s, std::uint64_t n_clicks, Rng& rng);

/// Fully sequential strategy: after every click the running estimate is
/// refreshed and the frame re-oriented (designated vector to +-estimate, or
/// uniformly at random). The final estimate maximizes the per-click product
/// likelihood. ForceBoundary keeps all estimates on the sphere (pure-state
/// benchmarking); Auto allows interior estimates.
TrialResult run_selflearning(const PauliVector& s, std::uint64_t n_clicks,
                             Alignment alignment, Rng& rng,
                             MlMode mode = MlMode::ForceBoundary);

// ---------------------------------------------------------------------------
// Exact two-qubit benchmark
// ---------------------------------------------------------------------------

enum class TwoQubitStrategy { NonAdaptive, AntiAlign };
enum class AverageOver { Pure, Ball };

/// Exact mean of |S - s|^2 for the two-click experiment, enumerating the 16
/// outcome pairs (probabilities p_j p_k, or p_j (1/2 - p_k) when the second
/// tetrahedron is flipped) with their maximum-likelihood estimators, averaged
/// over input states by Gauss-Legendre quadrature. The integrand is a
/// polynomial of degree four, so moderate orders are already exact.
double two_qubit_exhaustive(TwoQubitStrategy strategy, AverageOver average,
                            int quad_order = 24);

// ---------------------------------------------------------------------------
// Misalignment sensitivity
// ---------------------------------------------------------------------------

struct SweepPoint {
    double angle_deg = 0.0;
    double mean_sq_dist = 0.0;
    double mean_infidelity = 0.0;  // mean 1 - F over trials
};

/// Static frames aligned (or anti-aligned) with random pure inputs, then
/// rotated away by the given angle before data taking; one point per angle.
/// Trials use independently seeded streams seed + trial_index.
std::vector<SweepPoint> misalignment_sweep(Alignment alignment,
                                           const std::vector<double>& angles_deg,
                                           std::uint64_t n_clicks,
                                           std::uint64_t trials,
                                           std::uint64_t seed);

/// Haar-uniform rotation via a uniform unit quaternion.
Mat3 random_rotation(Rng& rng);

} // namespace tetra
