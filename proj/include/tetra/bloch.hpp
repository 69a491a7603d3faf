#pragma once

#include <Eigen/Core>
#include <array>

#include "tetra/rng.hpp"

namespace tetra {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Pauli vector s of a qubit state rho = (1 + s.sigma)/2; physical iff |s| <= 1.
using PauliVector = Vec3;

// Tolerances: internal identities are held to 1e-12, user-facing inputs are
// accepted up to 1e-9 so that accumulated round-off is not misreported as a
// caller error.
inline constexpr double kInternalTol = 1e-12;
inline constexpr double kApiTol = 1e-9;

/// Throws NonPhysicalState if |s| > 1 + kApiTol.
void require_physical(const PauliVector& s);

inline bool is_pure(const PauliVector& s, double tol = kInternalTol) {
    return std::abs(s.norm() - 1.0) <= tol;
}

// ---------------------------------------------------------------------------
// Outcome probability containers
// ---------------------------------------------------------------------------

/// Four tetrahedron outcome probabilities, each in [0, 1/2], unit sum,
/// with 1/4 <= sum p^2 <= 1/3 (purity bound).
struct Probabilities4 {
    std::array<double, 4> p{};

    double sum() const { return p[0] + p[1] + p[2] + p[3]; }
    double sum_squares() const {
        return p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
    }
    double operator[](int j) const { return p[j]; }
    double& operator[](int j) { return p[j]; }

    /// Throws InvalidProbabilities unless the sum is 1 within kApiTol.
    void validate() const;
};

using Probabilities6 = std::array<double, 6>;

// ---------------------------------------------------------------------------
// Measurement frames
// ---------------------------------------------------------------------------

// Four unit vectors with pairwise inner product -1/3, as a rotation of the
// reference quartet pointing at non-adjacent cube corners:
//   a1 = (1,1,1)/sqrt(3),   a2 = (1,-1,-1)/sqrt(3),
//   a3 = (-1,1,-1)/sqrt(3), a4 = (-1,-1,1)/sqrt(3).
// Every frame is represented by the rotation applied to this quartet, so a
// single canonical Gram check covers all frames.
class TetraFrame {
public:
    TetraFrame();                                  // reference orientation
    static TetraFrame from_rotation(const Mat3& rotation);
    static const std::array<Vec3, 4>& reference();

    const Vec3& vec(int j) const { return vecs_[j]; }
    const std::array<Vec3, 4>& vecs() const { return vecs_; }
    const Mat3& rotation() const { return rotation_; }

    /// Gram structure, null sum, completeness and orthogonality of the
    /// stored rotation, all within kInternalTol. Throws Error on violation.
    void validate() const;

private:
    std::array<Vec3, 4> vecs_;
    Mat3 rotation_;
};

/// The three orthonormal measurement axes of the six-outcome scheme,
/// stored as rows (x, y, z), optionally rotated.
class SixFrame {
public:
    SixFrame();                                    // identity axes
    static SixFrame from_rotation(const Mat3& rotation);

    Vec3 axis(int xi) const { return axes_.row(xi); }
    const Mat3& axes() const { return axes_; }

    void validate() const;

private:
    Mat3 axes_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// p_j = (1 + a_j . s)/4.
Probabilities4 outcome_probabilities(const PauliVector& s, const TetraFrame& frame);

/// p_{xi,+-} = (1 +- s_xi)/6, ordered x+, x-, y+, y-, z+, z-.
Probabilities6 six_state_probabilities(const PauliVector& s, const SixFrame& frame);

/// s = 3 sum_j p_j a_j; exact inverse of outcome_probabilities.
PauliVector reconstruct_pauli(const Probabilities4& p, const TetraFrame& frame);

/// Purity from probabilities alone: s^2 = 12 sum p^2 - 3.
double purity_from_probabilities(const Probabilities4& p);

/// Rotates the whole frame by `angle` radians about `axis` (Rodrigues).
TetraFrame rotate_frame(const TetraFrame& frame, const Vec3& axis, double angle);
SixFrame rotate_frame(const SixFrame& frame, const Vec3& axis, double angle);

/// Minimal rotation carrying unit vector `from` onto unit vector `to`;
/// antipodal inputs rotate by pi about a deterministic perpendicular axis.
Mat3 minimal_rotation(const Vec3& from, const Vec3& to);

/// Frame whose designated vector a_1 points along `target` (minimal rotation
/// from the current a_1).
TetraFrame align_frame(const TetraFrame& frame, const Vec3& target);

enum class StateKind { Pure, Ball };

/// Uniform pure state on the sphere, or uniform mixed state in ball volume.
PauliVector random_state(StateKind kind, Rng& rng);

} // namespace tetra
