#include "tetra/network.hpp"

#include <cmath>

#include "tetra/errors.hpp"

namespace tetra {

namespace {

constexpr Amp kI{0.0, 1.0};

int wire_stride(Wire w) {
    switch (w) {
        case Wire::AncillaA: return 4;
        case Wire::AncillaB: return 2;
        case Wire::Qubit: return 1;
    }
    return 1;
}

void apply_single(StateVector3& st, const Mat2c& u, Wire wire) {
    const int stride = wire_stride(wire);
    for (int base = 0; base < 8; ++base) {
        if (base & stride) continue;
        const Amp a0 = st.amp[base];
        const Amp a1 = st.amp[base + stride];
        st.amp[base] = u(0, 0) * a0 + u(0, 1) * a1;
        st.amp[base + stride] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_controlled(StateVector3& st, const Mat2c& u, Wire control, Wire target) {
    const int cs = wire_stride(control);
    const int ts = wire_stride(target);
    for (int base = 0; base < 8; ++base) {
        if (!(base & cs) || (base & ts)) continue;
        const Amp a0 = st.amp[base];
        const Amp a1 = st.amp[base + ts];
        st.amp[base] = u(0, 0) * a0 + u(0, 1) * a1;
        st.amp[base + ts] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

// |psi> with <sigma> = s for unit s
Eigen::Vector2cd bloch_ket(const Vec3& s) {
    const double theta = std::acos(std::clamp(s.z(), -1.0, 1.0));
    const double phi = std::atan2(s.y(), s.x());
    Eigen::Vector2cd k;
    k << std::cos(theta / 2.0), std::exp(kI * phi) * std::sin(theta / 2.0);
    return k;
}

Vec3 ket_bloch(const Eigen::Vector2cd& k) {
    const Amp c = std::conj(k[0]) * k[1];
    return Vec3(2.0 * c.real(), 2.0 * c.imag(),
                std::norm(k[0]) - std::norm(k[1]));
}

struct PureRun {
    std::array<double, 4> prob{};
    std::array<Eigen::Vector2cd, 4> cond{};  // unnormalized conditional kets
};

PureRun run_pure(const Eigen::Vector2cd& psi) {
    StateVector3 st;
    st.amp[0] = psi[0];
    st.amp[1] = psi[1];
    for (const GateSpec& g : build_network()) apply_gate(st, g);
    PureRun out;
    for (int m = 0; m < 4; ++m) {
        Eigen::Vector2cd sub;
        sub << st.amp[2 * m], st.amp[2 * m + 1];
        out.prob[m] = sub.squaredNorm();
        out.cond[m] = sub;
    }
    return out;
}

} // namespace

double StateVector3::norm() const {
    double n = 0.0;
    for (const Amp& a : amp) n += std::norm(a);
    return std::sqrt(n);
}

Mat2c generalized_hadamard(double phi) {
    Mat2c m;
    m << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
    return m;
}

PreparationAngles preparation_angles() {
    return {0.5 * std::asin((std::sqrt(3.0) - 1.0) / 3.0),
            0.5 * std::atan(std::sqrt(3.0) + 1.0)};
}

std::vector<GateSpec> build_network() {
    using K = GateSpec::Kind;
    const auto [alpha, beta] = preparation_angles();
    const double quarter_pi = 0.25 * M_PI;
    // Preparation: the controlled-NOT between the alpha gate and the beta
    // pair produces ancilla amplitudes 1/sqrt2, 1/sqrt6, 1/sqrt6, 1/sqrt6.
    // Central stage: ancilla A controls sigma_z, ancilla B controls sigma_x
    // on the qubit of interest; the ancilla phase gate turns the |11> branch
    // product sigma_x sigma_z into sigma_y. This control assignment is the
    // one that maps outcomes 00, 01, 10, 11 onto p_1, p_4, p_2, p_3.
    return {
        {K::GeneralizedHadamard, alpha, Wire::AncillaA, Wire::AncillaA},
        {K::ControlledGeneralizedHadamard, 0.5 * M_PI, Wire::AncillaB, Wire::AncillaA},
        {K::GeneralizedHadamard, beta, Wire::AncillaA, Wire::AncillaA},
        {K::GeneralizedHadamard, beta, Wire::AncillaB, Wire::AncillaB},
        {K::ControlledGeneralizedHadamard, 0.0, Wire::Qubit, Wire::AncillaA},
        {K::ControlledGeneralizedHadamard, 0.5 * M_PI, Wire::Qubit, Wire::AncillaB},
        {K::ControlledPhase, 0.0, Wire::AncillaB, Wire::AncillaA},
        {K::Hadamard, quarter_pi, Wire::AncillaA, Wire::AncillaA},
        {K::Hadamard, quarter_pi, Wire::AncillaB, Wire::AncillaB},
    };
}

void apply_gate(StateVector3& state, const GateSpec& gate) {
    switch (gate.kind) {
        case GateSpec::Kind::GeneralizedHadamard:
        case GateSpec::Kind::Hadamard:
            apply_single(state, generalized_hadamard(gate.phi), gate.target);
            break;
        case GateSpec::Kind::ControlledGeneralizedHadamard:
            apply_controlled(state, generalized_hadamard(gate.phi), gate.control,
                             gate.target);
            break;
        case GateSpec::Kind::ControlledPhase:
            // both ancillas |1>: amplitude indices 6 and 7
            state.amp[6] *= kI;
            state.amp[7] *= kI;
            break;
    }
}

std::array<Amp, 4> preparation_amplitudes() {
    StateVector3 st;
    st.amp[0] = 1.0;  // ancillas |00>, qubit |0>
    const auto gates = build_network();
    for (int g = 0; g < 4; ++g) apply_gate(st, gates[g]);
    return {st.amp[0], st.amp[2], st.amp[4], st.amp[6]};
}

Mat8c network_unitary() {
    Mat8c u;
    for (int col = 0; col < 8; ++col) {
        StateVector3 st;
        st.amp[col] = 1.0;
        for (const GateSpec& g : build_network()) apply_gate(st, g);
        for (int row = 0; row < 8; ++row) u(row, col) = st.amp[row];
    }
    return u;
}

int NetworkResult::outcome_for_quartet(int j) {
    static constexpr std::array<int, 4> map = {0, 2, 3, 1};
    return map[j];
}

const PauliVector& NetworkResult::post_state(int outcome) const {
    if (!post_defined[outcome])
        throw UndefinedPostState("conditional state undefined for zero-probability outcome");
    return post[outcome];
}

NetworkResult run_network(const PauliVector& s) {
    require_physical(s);
    const double len = s.norm();
    const Vec3 dir = len > 1e-15 ? Vec3(s / len) : Vec3::UnitZ();
    const double wp = 0.5 * (1.0 + len);
    const double wm = 0.5 * (1.0 - len);

    const PureRun plus = run_pure(bloch_ket(dir));
    const PureRun minus = wm > 0.0 ? run_pure(bloch_ket(-dir)) : PureRun{};

    NetworkResult out;
    for (int m = 0; m < 4; ++m) {
        const double pm = wp * plus.prob[m] + wm * minus.prob[m];
        out.probabilities[m] = pm;
        if (pm <= 1e-12) {
            out.post_defined[m] = false;
            out.post[m] = Vec3::Zero();
            continue;
        }
        // conditional qubit state: mixture of the two conditional pure states
        Vec3 bloch = Vec3::Zero();
        if (plus.prob[m] > 0.0)
            bloch += wp * plus.prob[m] * ket_bloch(plus.cond[m].normalized());
        if (wm > 0.0 && minus.prob[m] > 0.0)
            bloch += wm * minus.prob[m] * ket_bloch(minus.cond[m].normalized());
        out.post[m] = bloch / pm;
        out.post_defined[m] = true;
    }
    return out;
}

} // namespace tetra
