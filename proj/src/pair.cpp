#include "tetra/pair.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "tetra/errors.hpp"

namespace tetra {

namespace {

using Mat2c = Eigen::Matrix2cd;
constexpr std::complex<double> kI{0.0, 1.0};

const std::array<Mat2c, 4>& pauli_basis() {
    static const std::array<Mat2c, 4> basis = [] {
        std::array<Mat2c, 4> b;
        b[0] << 1, 0, 0, 1;
        b[1] << 0, 1, 1, 0;
        b[2] << 0, -kI, kI, 0;
        b[3] << 1, 0, 0, -1;
        return b;
    }();
    return basis;
}

Mat4c kron2(const Mat2c& a, const Mat2c& b) {
    Mat4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

} // namespace

TwoQubitState::TwoQubitState() : t_(Mat4::Zero()) { t_(0, 0) = 1.0; }

TwoQubitState TwoQubitState::from_coefficients(const Mat4& t) {
    if (std::abs(t(0, 0) - 1.0) > kApiTol)
        throw InvalidProbabilities("two-qubit coefficients must have t00 = 1");
    TwoQubitState st;
    st.t_ = t;
    return st;
}

TwoQubitState TwoQubitState::from_matrix(const Mat4c& rho) {
    if ((rho - rho.adjoint()).norm() > kApiTol)
        throw NonPhysicalState("two-qubit matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > kApiTol || std::abs(rho.trace().imag()) > kApiTol)
        throw NonPhysicalState("two-qubit matrix not unit trace");
    const auto& sig = pauli_basis();
    Mat4 t;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            Mat4c op = kron2(sig[mu], sig[nu]);
            t(mu, nu) = (rho * op).trace().real();
        }
    TwoQubitState st;
    st.t_ = t;
    return st;
}

TwoQubitState TwoQubitState::singlet() {
    Mat4 t = Mat4::Zero();
    t(0, 0) = 1.0;
    t(1, 1) = t(2, 2) = t(3, 3) = -1.0;
    TwoQubitState st;
    st.t_ = t;
    return st;
}

TwoQubitState TwoQubitState::product(const PauliVector& s1, const PauliVector& s2) {
    require_physical(s1);
    require_physical(s2);
    Mat4 t;
    t(0, 0) = 1.0;
    for (int i = 0; i < 3; ++i) {
        t(i + 1, 0) = s1[i];
        t(0, i + 1) = s2[i];
        for (int j = 0; j < 3; ++j) t(i + 1, j + 1) = s1[i] * s2[j];
    }
    TwoQubitState st;
    st.t_ = t;
    return st;
}

Mat4c TwoQubitState::matrix() const {
    const auto& sig = pauli_basis();
    Mat4c rho = Mat4c::Zero();
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            rho += 0.25 * t_(mu, nu) * kron2(sig[mu], sig[nu]);
    return rho;
}

double TwoQubitState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Mat4c> es(matrix());
    return es.eigenvalues().minCoeff();
}

void JointProbabilities::validate() const {
    if (std::abs(sum() - 1.0) > kApiTol)
        throw InvalidProbabilities("joint probabilities must sum to 1");
    if ((q.array() < -kApiTol).any())
        throw InvalidProbabilities("negative joint probability");
}

JointProbabilities joint_probabilities(const TwoQubitState& rho,
                                       const TetraFrame& frame_a,
                                       const TetraFrame& frame_b) {
    // q_jk = (1/16) [1 + a_j . t_row0 + t_col0 . b_k + a_j^T T b_k]
    const Mat4& t = rho.coefficients();
    const PauliVector sa = rho.reduced_first();
    const PauliVector sb = rho.reduced_second();
    const Mat3 corr = t.block<3, 3>(1, 1);
    JointProbabilities out;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            const Vec3& a = frame_a.vec(j);
            const Vec3& b = frame_b.vec(k);
            double v = (1.0 + a.dot(sa) + b.dot(sb) + a.dot(corr * b)) / 16.0;
            if (v < 0.0 && v > -kInternalTol) v = 0.0;
            out.q(j, k) = v;
        }
    return out;
}

TwoQubitState reconstruct_two_qubit(const JointProbabilities& q,
                                    const TetraFrame& frame_a,
                                    const TetraFrame& frame_b) {
    if (std::abs(q.sum() - 1.0) > kApiTol)
        throw InvalidProbabilities("joint probabilities must sum to 1");
    // (6P_j - 1) = 1/2 + (3/2) a_j . sigma, so in coefficient form
    // t_x0 = 3 sum_j (row sum) a_j etc., and t_corr = 9 sum_jk q_jk a_j b_k^T.
    Mat4 t = Mat4::Zero();
    t(0, 0) = q.sum();
    Vec3 s1 = Vec3::Zero(), s2 = Vec3::Zero();
    Mat3 corr = Mat3::Zero();
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
            s1 += 3.0 * q.q(j, k) * frame_a.vec(j);
            s2 += 3.0 * q.q(j, k) * frame_b.vec(k);
            corr += 9.0 * q.q(j, k) * frame_a.vec(j) * frame_b.vec(k).transpose();
        }
    t.block<3, 1>(1, 0) = s1;
    t.block<1, 3>(0, 1) = s2.transpose();
    t.block<3, 3>(1, 1) = corr;
    return TwoQubitState::from_coefficients(t);
}

OrientationResult orientation_dyadic(const JointProbabilities& q,
                                     const TetraFrame& frame_a,
                                     const TetraFrame& frame_b) {
    OrientationResult out;
    Mat3 o = Mat3::Zero();
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            o -= 9.0 * q.q(j, k) * frame_a.vec(j) * frame_a.vec(k).transpose();
    (void)frame_b;  // the b-quartet form -9 sum b_j q_jk b_k^T is the same dyadic
    out.O = o;
    out.orthogonality_error = (o * o.transpose() - Mat3::Identity()).norm();
    out.orthogonal_warning = out.orthogonality_error > 1e-3;
    return out;
}

Mat4 sample_pair_clicks(const TwoQubitState& rho, const TetraFrame& frame_a,
                        const TetraFrame& frame_b, std::uint64_t pairs, Rng& rng) {
    const JointProbabilities jp = joint_probabilities(rho, frame_a, frame_b);
    std::array<double, 16> flat{};
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) flat[4 * j + k] = std::max(0.0, jp.q(j, k));
    Mat4 counts = Mat4::Zero();
    for (std::uint64_t i = 0; i < pairs; ++i) {
        const int c = rng.categorical(flat.data(), 16);
        counts(c / 4, c % 4) += 1.0;
    }
    return counts;
}

} // namespace tetra
