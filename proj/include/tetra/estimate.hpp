#pragma once

#include <vector>

#include "tetra/bloch.hpp"
#include "tetra/clicks.hpp"

namespace tetra {

enum class Branch { Interior, Boundary };
enum class MlMode { Auto, ForceBoundary };

/// Maximum-likelihood reconstruction result.
struct Estimate {
    PauliVector S = PauliVector::Zero();
    std::vector<double> ptilde;      // fitted probabilities (4 or 6 entries)
    double mu = 0.0;                 // boundary Lagrange multiplier (0 on interior)
    Branch branch = Branch::Interior;
    double loglik = 0.0;             // sum n_j log ptilde_j, with 0 log 0 = 0
    bool degenerate = false;         // flagged deterministic tie-break
};

/// Linear inversion of relative frequencies, S = 3 sum nu_j a_j; |S| may
/// exceed 1. Throws EmptyData when no clicks were recorded.
PauliVector naive_estimator(const ClickCounts& counts, const TetraFrame& frame);

/// True iff sum nu_j^2 <= 1/3, i.e. the frequencies are physical as they stand.
bool check_inequality(const ClickCounts& counts);

/// Positive multiplier mu in (0, 2] solving
///   mu + 2 - (1/2) sum_j sqrt((1-mu)^2 + 12 mu nu_j) = 0
/// for frequencies violating the physicality inequality. Bracketed bisection
/// on the equivalent quotient form, which stays well conditioned near mu = 0
/// where the equation has a spurious double root.
double solve_mu(const std::array<double, 4>& nu);

/// Boundary-branch fitted probabilities for a given multiplier, with
/// lambda = 1 - mu. Uses the cancellation-free branch of the quadratic
/// solution; zero-count categories receive (mu-1)/(3 mu) when mu > 1.
std::array<double, 4> boundary_probabilities(const std::array<double, 4>& nu, double mu);

/// Four-outcome maximum-likelihood estimate. Auto mode returns the naive
/// frequencies when physical and otherwise solves the constrained boundary
/// problem; ForceBoundary always returns a unit Pauli vector (for sources
/// known to be pure). Equal counts under ForceBoundary are a perfect tie and
/// return the frame's +z direction with the degenerate flag set.
Estimate ml_estimate_four(const ClickCounts& counts, const TetraFrame& frame,
                          MlMode mode = MlMode::Auto);

/// Six-outcome maximum-likelihood estimate: per-axis count asymmetries when
/// the resulting vector is physical, otherwise the likelihood maximum over
/// unit vectors. Throws EmptyAxis when an axis recorded no clicks at all.
Estimate ml_estimate_six(const SixCounts& counts, const SixFrame& frame);

// ---------------------------------------------------------------------------
// Generic log-likelihood surface over the sphere
// ---------------------------------------------------------------------------

// Each detector click contributes a term w log(1 + v . s): v = a_j for
// tetrahedron outcomes, v = +-axis for six-state outcomes. This covers
// homogeneous runs (w = count per category) as well as adaptive runs where
// the frame differs per click.
struct LogLikTerm {
    Vec3 v;
    double w = 1.0;
};

double sphere_loglik(const std::vector<LogLikTerm>& terms, const Vec3& s);

/// Gradient of sphere_loglik in ambient coordinates.
Vec3 sphere_loglik_gradient(const std::vector<LogLikTerm>& terms, const Vec3& s);

/// Maximizes sum_k w_k log(1 + v_k . s) over |s| = 1 by damped Newton steps
/// in the local tangent plane, retracted to the sphere, from deterministic
/// multi-starts (+-coordinate axes, the eight cube corners, and any callers'
/// warm starts). Smooth objective; the multi-start guards rare multimodality.
Vec3 maximize_sphere_loglik(const std::vector<LogLikTerm>& terms,
                            const std::vector<Vec3>& warm_starts = {});

/// Single Newton polish from one start; used for cheap per-click updates.
Vec3 polish_sphere_loglik(const std::vector<LogLikTerm>& terms, const Vec3& start,
                          int max_iters = 40);

/// Maximizes the same objective over the closed ball |s| <= 1. The surface is
/// concave, so this is the interior stationary point when one exists and the
/// sphere maximum otherwise.
Vec3 maximize_ball_loglik(const std::vector<LogLikTerm>& terms,
                          const std::vector<Vec3>& warm_starts = {});

} // namespace tetra
