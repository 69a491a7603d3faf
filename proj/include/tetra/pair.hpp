#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstdint>

#include "tetra/bloch.hpp"
#include "tetra/rng.hpp"

namespace tetra {

using Mat4c = Eigen::Matrix4cd;
using Mat4 = Eigen::Matrix4d;

// Two-qubit state held as real Pauli-basis coefficients
// t[mu][nu] = Tr[rho sigma_mu x sigma_nu], mu, nu in {0, x, y, z}, t[0][0] = 1;
// the dense 4x4 matrix is a derived view. The basis ordering of the matrix
// view is |q1 q2> with q1 the first tensor factor.
class TwoQubitState {
public:
    TwoQubitState();  // maximally mixed

    static TwoQubitState from_coefficients(const Mat4& t);
    static TwoQubitState from_matrix(const Mat4c& rho);
    /// Perfectly anticorrelated pair, rho = (1 - sigma.sigma)/4.
    static TwoQubitState singlet();
    static TwoQubitState product(const PauliVector& s1, const PauliVector& s2);

    const Mat4& coefficients() const { return t_; }
    double coeff(int mu, int nu) const { return t_(mu, nu); }
    Mat4c matrix() const;

    /// Pauli vectors of the reduced one-qubit states.
    PauliVector reduced_first() const { return t_.block<3, 1>(1, 0); }
    PauliVector reduced_second() const { return t_.block<1, 3>(0, 1).transpose(); }

    double min_eigenvalue() const;
    bool is_positive(double tol = kApiTol) const { return min_eigenvalue() >= -tol; }

private:
    Mat4 t_;
};

/// The 16 joint outcome probabilities q_jk = <P_j Q_k> of two four-outcome
/// measurements with frames A and B.
struct JointProbabilities {
    Mat4 q = Mat4::Zero();
    double sum() const { return q.sum(); }
    void validate() const;
};

JointProbabilities joint_probabilities(const TwoQubitState& rho,
                                       const TetraFrame& frame_a,
                                       const TetraFrame& frame_b);

/// Linear inversion rho = sum_jk (6P_j - 1) q_jk (6Q_k - 1). Noisy input may
/// reconstruct to a non-positive operator; the raw inversion is returned and
/// positivity is left to the caller's is_positive check.
TwoQubitState reconstruct_two_qubit(const JointProbabilities& q,
                                    const TetraFrame& frame_a,
                                    const TetraFrame& frame_b);

/// Relative orientation of the two measurement quartets from singlet data,
/// O = -9 sum_jk a_j q_jk a_k^T, so that b_k = O a_k.
struct OrientationResult {
    Mat3 O = Mat3::Identity();
    double orthogonality_error = 0.0;  // ||O O^T - 1||_F
    bool orthogonal_warning = false;   // set when the error exceeds 1e-3
};

OrientationResult orientation_dyadic(const JointProbabilities& q,
                                     const TetraFrame& frame_a,
                                     const TetraFrame& frame_b);

/// Joint click tallies from `pairs` samples of the 16-outcome measurement.
Mat4 sample_pair_clicks(const TwoQubitState& rho, const TetraFrame& frame_a,
                        const TetraFrame& frame_b, std::uint64_t pairs, Rng& rng);

} // namespace tetra
