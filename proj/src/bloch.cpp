#include "tetra/bloch.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <sstream>

#include "tetra/errors.hpp"

namespace tetra {

void require_physical(const PauliVector& s) {
    const double n = s.norm();
    if (n > 1.0 + kApiTol) {
        std::ostringstream os;
        os << "Pauli vector outside the Bloch ball: |s| = " << n;
        throw NonPhysicalState(os.str());
    }
}

void Probabilities4::validate() const {
    if (std::abs(sum() - 1.0) > kApiTol)
        throw InvalidProbabilities("probabilities must sum to 1");
    for (double v : p)
        if (v < -kApiTol || v > 0.5 + kApiTol)
            throw InvalidProbabilities("probability outside [0, 1/2]");
}

// ---------------------------------------------------------------------------
// TetraFrame
// ---------------------------------------------------------------------------

const std::array<Vec3, 4>& TetraFrame::reference() {
    static const double r = 1.0 / std::sqrt(3.0);
    static const std::array<Vec3, 4> ref = {
        Vec3(r, r, r), Vec3(r, -r, -r), Vec3(-r, r, -r), Vec3(-r, -r, r)};
    return ref;
}

TetraFrame::TetraFrame() : vecs_(reference()), rotation_(Mat3::Identity()) {}

TetraFrame TetraFrame::from_rotation(const Mat3& rotation) {
    TetraFrame f;
    f.rotation_ = rotation;
    for (int j = 0; j < 4; ++j) f.vecs_[j] = rotation * reference()[j];
    f.validate();
    return f;
}

void TetraFrame::validate() const {
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            const double want = (j == k) ? 1.0 : -1.0 / 3.0;
            if (std::abs(vecs_[j].dot(vecs_[k]) - want) > kInternalTol)
                throw Error("tetrahedron Gram structure violated");
        }
    Vec3 sum = vecs_[0] + vecs_[1] + vecs_[2] + vecs_[3];
    if (sum.norm() > kInternalTol) throw Error("tetrahedron null sum violated");
    Mat3 completeness = Mat3::Zero();
    for (const Vec3& a : vecs_) completeness += 0.75 * a * a.transpose();
    if ((completeness - Mat3::Identity()).norm() > kInternalTol)
        throw Error("tetrahedron completeness violated");
    if ((rotation_ * rotation_.transpose() - Mat3::Identity()).norm() > kInternalTol)
        throw Error("frame rotation not orthogonal");
}

SixFrame::SixFrame() : axes_(Mat3::Identity()) {}

SixFrame SixFrame::from_rotation(const Mat3& rotation) {
    SixFrame f;
    f.axes_ = rotation;  // rows are the rotated x, y, z axes
    f.validate();
    return f;
}

void SixFrame::validate() const {
    if ((axes_ * axes_.transpose() - Mat3::Identity()).norm() > kInternalTol)
        throw Error("six-state axes not orthonormal");
}

// ---------------------------------------------------------------------------
// Probabilities and inversion
// ---------------------------------------------------------------------------

Probabilities4 outcome_probabilities(const PauliVector& s, const TetraFrame& frame) {
    require_physical(s);
    Probabilities4 out;
    for (int j = 0; j < 4; ++j) {
        double pj = 0.25 * (1.0 + frame.vec(j).dot(s));
        if (pj < 0.0 && pj > -kInternalTol) pj = 0.0;  // round-off at the sphere
        out.p[j] = pj;
    }
    return out;
}

Probabilities6 six_state_probabilities(const PauliVector& s, const SixFrame& frame) {
    require_physical(s);
    Probabilities6 out;
    for (int xi = 0; xi < 3; ++xi) {
        const double proj = frame.axis(xi).dot(s);
        double plus = (1.0 + proj) / 6.0;
        double minus = (1.0 - proj) / 6.0;
        if (plus < 0.0 && plus > -kInternalTol) plus = 0.0;
        if (minus < 0.0 && minus > -kInternalTol) minus = 0.0;
        out[2 * xi] = plus;
        out[2 * xi + 1] = minus;
    }
    return out;
}

PauliVector reconstruct_pauli(const Probabilities4& p, const TetraFrame& frame) {
    if (std::abs(p.sum() - 1.0) > kApiTol)
        throw InvalidProbabilities("probabilities must sum to 1");
    Vec3 s = Vec3::Zero();
    for (int j = 0; j < 4; ++j) s += p[j] * frame.vec(j);
    return 3.0 * s;
}

double purity_from_probabilities(const Probabilities4& p) {
    return 12.0 * p.sum_squares() - 3.0;
}

// ---------------------------------------------------------------------------
// Rotations
// ---------------------------------------------------------------------------

namespace {

Mat3 rodrigues(const Vec3& axis, double angle) {
    const double n = axis.norm();
    if (n < 1e-300) throw ZeroAxis("rotation axis has zero length");
    return Eigen::AngleAxisd(angle, axis / n).toRotationMatrix();
}

} // namespace

TetraFrame rotate_frame(const TetraFrame& frame, const Vec3& axis, double angle) {
    return TetraFrame::from_rotation(rodrigues(axis, angle) * frame.rotation());
}

SixFrame rotate_frame(const SixFrame& frame, const Vec3& axis, double angle) {
    // rows transform as vectors: axes' = axes * R^T
    Mat3 rotated = frame.axes() * rodrigues(axis, angle).transpose();
    return SixFrame::from_rotation(rotated);
}

Mat3 minimal_rotation(const Vec3& from, const Vec3& to) {
    Vec3 u = from.normalized();
    Vec3 v = to.normalized();
    const Vec3 c = u.cross(v);
    const double d = u.dot(v);
    if (c.norm() < 1e-14) {
        if (d > 0.0) return Mat3::Identity();
        // antipodal: half-turn about a fixed perpendicular direction
        Vec3 p = u.cross(Vec3::UnitX());
        if (p.norm() < 0.5) p = u.cross(Vec3::UnitY());
        p.normalize();
        return 2.0 * p * p.transpose() - Mat3::Identity();
    }
    Mat3 k;
    k << 0, -c.z(), c.y(), c.z(), 0, -c.x(), -c.y(), c.x(), 0;
    return Mat3::Identity() + k + k * k / (1.0 + d);
}

TetraFrame align_frame(const TetraFrame& frame, const Vec3& target) {
    return TetraFrame::from_rotation(minimal_rotation(frame.vec(0), target) *
                                     frame.rotation());
}

PauliVector random_state(StateKind kind, Rng& rng) {
    return kind == StateKind::Pure ? rng.unit_vector() : rng.ball_point();
}

} // namespace tetra
