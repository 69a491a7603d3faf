#pragma once

// Test-side oracles, independent of the library's estimation paths: brute
// force likelihood maximization on precomputed meshes, a positive-term erf
// series, a dense 2x2 matrix fidelity evaluation, and a grid-scan root
// finder for the boundary multiplier equation.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "tetra/bloch.hpp"
#include "tetra/clicks.hpp"

namespace oracles {

using tetra::Vec3;

// Quasi-uniform mesh of the closed Bloch ball: Fibonacci-spiral directions
// with van-der-Corput radii (cube-root transformed), decorrelated so the
// covering radius stays near the nominal spacing (volume/M)^(1/3).
std::vector<Vec3> ball_mesh(std::size_t count);

/// Fibonacci-spiral mesh of the unit sphere.
std::vector<Vec3> sphere_mesh(std::size_t count);

/// Nominal spacing of a ball mesh with `count` points.
double ball_mesh_spacing(std::size_t count);

struct BruteResult {
    Vec3 argmax = Vec3::Zero();
    double loglik = 0.0;
};

// Brute-force maximizer of sum_j n_j log p_j(s) over a ball mesh, followed by
// a brute-force refinement pass on a local submesh around the coarse argmax
// (still pure likelihood evaluation; no gradients shared with the library).
class BallBruteForce {
public:
    BallBruteForce(const tetra::TetraFrame& frame, std::size_t mesh_points,
                   std::size_t refine_points = 100000);

    BruteResult maximize(const std::array<std::uint64_t, 4>& counts) const;
    double spacing() const { return spacing_; }

private:
    tetra::TetraFrame frame_;
    std::vector<Vec3> mesh_;
    std::vector<std::array<double, 4>> logp_;  // per-point log outcome probs
    std::vector<Vec3> refine_template_;
    double spacing_;
};

/// Brute-force maximizer over the unit sphere for six-outcome counts.
tetra::Vec3 sphere_brute_force_six(const std::array<std::uint64_t, 6>& counts,
                                   const tetra::SixFrame& frame,
                                   std::size_t mesh_points);

/// erf from the positive-term series 2/sqrt(pi) e^{-x^2} sum 2^n x^{2n+1} /
/// (2n+1)!!, evaluated in long double; no cancellation at any x.
double erf_series(double x);

/// Uhlmann fidelity Tr |sqrt(rho1) sqrt(rho2)| via dense 2x2 Hermitian
/// eigendecompositions.
double uhlmann_matrix_oracle(const Vec3& s1, const Vec3& s2);

/// Root of the boundary multiplier equation found by a fine grid scan of
/// mu + 2 - (1/2) sum sqrt((1-mu)^2 + 12 mu nu_j) over (0, 2], refined by
/// bisection on the bracketing grid cell.
double mu_grid_scan(const std::array<double, 4>& nu, std::size_t grid = 2000000);

/// Least-squares slope of log10(y) against log10(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace oracles
