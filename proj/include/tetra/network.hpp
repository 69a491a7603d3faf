#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>
#include <vector>

#include "tetra/bloch.hpp"

namespace tetra {

// Three-qubit statevector simulation of the quantum-computation network that
// realizes the tetrahedron measurement: two ancilla wires (A, B) that start
// in |0> and are measured at the end, and the qubit of interest. Basis order
// is |q_A q_B q>, amplitude index 4 q_A + 2 q_B + q.

using Amp = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat8c = Eigen::Matrix<std::complex<double>, 8, 8>;

struct StateVector3 {
    std::array<Amp, 8> amp{};
    double norm() const;
};

enum class Wire { AncillaA = 0, AncillaB = 1, Qubit = 2 };

struct GateSpec {
    enum class Kind {
        GeneralizedHadamard,            // one-parameter real unitary on one wire
        ControlledGeneralizedHadamard,  // applied to target when control is |1>
        ControlledPhase,                // |11> -> i |11> on the two ancillas
        Hadamard,                       // the phi = pi/4 special case
    };
    Kind kind;
    double phi = 0.0;
    Wire target = Wire::AncillaA;
    Wire control = Wire::AncillaA;  // meaningful for controlled kinds only
};

/// [[cos phi, sin phi], [sin phi, -cos phi]]; phi = 0 is sigma_z,
/// phi = pi/2 is sigma_x, phi = pi/4 the standard Hadamard.
Mat2c generalized_hadamard(double phi);

/// Ancilla preparation angles with sin(2 alpha) = (sqrt(3)-1)/3 and
/// tan(2 beta) = sqrt(3)+1, principal branches.
struct PreparationAngles {
    double alpha;
    double beta;
};
PreparationAngles preparation_angles();

/// The nine-gate network: ancilla preparation (alpha gate, controlled NOT,
/// two beta gates), controlled sigma_z and sigma_x on the qubit of interest,
/// the ancilla phase gate supplying the factor i, and two final Hadamards.
std::vector<GateSpec> build_network();

void apply_gate(StateVector3& state, const GateSpec& gate);

/// Ancilla amplitudes after the preparation stage with the qubit in |0>;
/// ordered 00, 01, 10, 11 (targets 1/sqrt2, 1/sqrt6, 1/sqrt6, 1/sqrt6).
std::array<Amp, 4> preparation_amplitudes();

/// Full 8x8 unitary of the gate sequence.
Mat8c network_unitary();

/// Measurement statistics of the network. probabilities[m] is the chance of
/// ancilla outcome m in {00, 01, 10, 11}; these equal the tetrahedron
/// probabilities p_1, p_4, p_2, p_3 of the reference quartet. Post-measurement
/// states of the qubit of interest follow 2 P_j rho P_j / p_j.
struct NetworkResult {
    std::array<double, 4> probabilities{};
    std::array<PauliVector, 4> post{};
    std::array<bool, 4> post_defined{};

    /// Outcome index carrying p_j for quartet index j (0-based): {0,2,3,1}.
    static int outcome_for_quartet(int j);
    /// Throws UndefinedPostState when the outcome probability vanishes.
    const PauliVector& post_state(int outcome) const;
};

/// Runs the network on a qubit in state s. Mixed inputs are simulated as the
/// convex combination of the two eigenstate runs along +-s_hat.
NetworkResult run_network(const PauliVector& s);

} // namespace tetra
