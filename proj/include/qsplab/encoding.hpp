#pragma once

#include <array>
#include <string>

#include "qsplab/fock.hpp"

namespace qsplab::encoding {

using fock::cplx;
using fock::Matrix;
using fock::RealMatrix;
using fock::Vector;

// Analogous Pauli operators of the quadrature-sign / parity encoding:
// Z = photon-number parity, X = sign of the q quadrature, Y = i X Z.
struct ApoSet {
    int dim;
    Matrix I;
    Matrix X;
    Matrix Y;
    Matrix Z;
    // Quadrature-assembled operator square of X (identity up to quadrature
    // error); used for the involution check on states.
    Matrix X_square;
};

ApoSet apo_set(const fock::FockSpace& space);

// 2x2 logical Pauli matrices (basis |0_L>, |1_L>).
std::array<Eigen::Matrix2cd, 4> logical_paulis();  // order I, X, Y, Z

struct Diagnostics {
    // |Tr{S^2 rho} - 1| with S the truncated sign matrix: the share of
    // sign(q)|psi> lost above the cutoff (kink leakage).
    double sign_sq_defect = 0.0;
    // Population above the top quarter of the space.
    double tail_mass = 0.0;
    // |<X^2>-1| with the quadrature-assembled square.
    double involution_defect = 0.0;
};

struct LogicalState {
    int n_qubits = 1;
    Eigen::MatrixXcd mat;         // 2^N x 2^N, unit trace
    double pre_norm_weight = 1.0; // Tr before renormalization
    Diagnostics diag;
};

// Single-qubit tomography: rho_L = (1/2) sum_Q <Q_E> Q_L, renormalized by
// <I_E> with the pre-normalization weight reported.
LogicalState logical_qubit(const Matrix& rho, const ApoSet& apo);

// Two-qubit tomography over a dense two-mode density matrix (dims d x d).
LogicalState logical_state_2mode(const Matrix& rho2, const ApoSet& apo);

// Build a logical state from precomputed APO-string expectation values,
// ordered with mode-0 operator index major: e[i*4+j] = <Q_i (x) Q_j>, etc.
LogicalState logical_from_expectations(int n_qubits, const std::vector<cplx>& e);

double logical_fidelity(const LogicalState& a, const LogicalState& b);
double trace_distance(const LogicalState& a, const LogicalState& b);

// Bloch vector (x, y, z) of a single-qubit logical state.
std::array<double, 3> bloch(const LogicalState& s);

std::string to_json(const LogicalState& s);

}  // namespace qsplab::encoding
