#pragma once

#include <vector>

#include "qsplab/fock.hpp"
#include "qsplab/states.hpp"

namespace qsplab::gates {

using fock::cplx;
using fock::Matrix;
using fock::Vector;

// Diagonal of e^{i theta P} with P the parity operator: entries e^{i theta (-1)^n}.
Vector parity_rotation_diag(double theta, const fock::FockSpace& space);
Matrix parity_rotation(double theta, const fock::FockSpace& space);

// Two-mode diagonal of e^{i theta P (x) P}: entry (m, n) -> e^{i theta (-1)^{m+n}},
// flattened with mode-1 index major.
Vector joint_parity_diag(double theta, int d1, int d2);

// CPhase = R_1(-pi/4) R_2(-pi/4) E_12(pi/4), one global phase left in.
Vector cphase_diag(int d1, int d2);
// Direct per-sector form: e^{-i pi/4} * (-1 iff both parities odd).
Vector cphase_diag_direct(int d1, int d2);

// Apply a two-mode diagonal to a dense two-mode density matrix.
Matrix apply_two_mode_diag(const Vector& diag, const Matrix& rho2);

// T-state preparation: parity rotation of the displaced-thermal |+_L> onto
// Bloch (cos pi/4, sin pi/4, 0). The required angle is -pi/8 under the
// conventions R(theta) = e^{i theta P}, Y = i X Z.
constexpr double t_state_angle = -0.39269908169872414;  // -pi/8
Matrix t_state_prep(const states::ThermalParams& p, const fock::FockSpace& space);

struct TruncationBudget {
    double n_bar = 0.0;
    double tol = 0.01;
    double lambda = 0.0;  // 12 (n_bar + 1/2)
    int r_max = 0;        // ceil(30 (n_bar + 1/2))
    int k_max = 0;        // minimal series order with tail bound <= tol
};

// B(K) = (pi r)^K / K! * 1/(1 - pi r/(K+1)) for K+1 > pi r, log-space.
double series_tail_bound_log(double r, int k);
TruncationBudget truncation_budget(double n_bar, double tol = 0.01);

struct ParityGateReport {
    struct Level {
        int n;
        double defect;      // |Ptilde_n - (-1)^n|
        double population;  // weight in the reference state
        double gate_error;  // min(|e^{i theta Ptilde_n} - e^{i theta (-1)^n}|, 2)
    };
    std::vector<Level> levels;
    double weighted_gate_error = 0.0;
    double max_defect = 0.0;
    int precision_bits = 0;
};

struct TruncatedParityGate {
    Vector diag;
    ParityGateReport report;
};

// Diagonal gate exp(i theta Ptilde_n) with Ptilde_n the order-k_max partial
// sum of sum_k (i pi n)^k / k!, accumulated in extended precision. The
// reference state weights the per-level error report. Throws NumericsError
// when the requested precision cannot bound rounding noise below 1e-25.
TruncatedParityGate truncated_parity_gate(const TruncationBudget& budget, double theta,
                                          const fock::FockSpace& space,
                                          const Matrix& reference_state);

// Naive double-precision partial sum of the same series (regression baseline;
// catastrophically cancels around pi n ~ 90).
cplx naive_parity_partial_sum(int n, int k_max);

// Extended-precision partial sum evaluated to double (test oracle access).
cplx parity_partial_sum(int n, int k_max);

}  // namespace qsplab::gates
