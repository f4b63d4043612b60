#pragma once

#include <cstdint>
#include <vector>

#include "qsplab/fock.hpp"
#include "qsplab/measurement.hpp"
#include "qsplab/rng.hpp"

namespace qsplab::multimode {

using fock::cplx;
using fock::Matrix;
using fock::RealVector;
using fock::Vector;

// Dense two-mode density matrix, mode-1-major flattening: index n1*d2 + n2.
// Memory is (d1 d2)^2 complex doubles, which caps practical cutoffs near 66.
class TwoModeDensity {
  public:
    TwoModeDensity(const Matrix& rho1, const Matrix& rho2);

    int d1() const { return d1_; }
    int d2() const { return d2_; }
    const Matrix& rho() const { return rho_; }
    double weight() const { return weight_; }

    // Modes are 0-based. rho <- (M (x) I) rho (M (x) I)^H for mode 0,
    // (I (x) M) rho (I (x) M)^H for mode 1.
    void apply_mode(int mode, const Matrix& m);
    // Full-index diagonal unitary (e.g. joint parity / CPhase).
    void apply_diag(const Vector& diag);
    // Single-mode diagonal unitary.
    void apply_mode_diag(int mode, const Vector& diag);
    // Exact dephasing with the same kappa t on both modes.
    void dephase(double kappa_t);

    // Tr{(A (x) B) rho} by block contraction.
    cplx expect_product(const Matrix& a, const Matrix& b) const;
    double trace() const { return rho_.trace().real(); }

    // Collapse one mode with a projector; multiplies the running weight by the
    // branch mass and renormalizes. Throws ConfigError on zero-weight branch.
    void project_mode(int mode, const Matrix& projector);

    // Partial trace down to one mode (keep = 0 or 1).
    Matrix reduce_to(int mode) const;

  private:
    int d1_;
    int d2_;
    Matrix rho_;
    double weight_ = 1.0;
};

// Sparse exact representation of few-mode trajectory states reachable from a
// product state by Fock-diagonal single-mode gates and joint-parity gates:
//   |Psi> = sum_t c_t  (x)_k  P^{s_tk} |v_k>
// with P the parity operator and s_tk pattern bits. Joint parity splits each
// term in two (cos/sin parts); single-mode diagonals commute with P and fold
// into the base vectors, so term count stays <= 2^modes.
class ProductSumState {
  public:
    ProductSumState(std::vector<Vector> bases);

    int modes() const { return int(bases_.size()); }
    int dim(int mode) const { return int(bases_[mode].size()); }
    int term_count() const { return int(terms_.size()); }

    void apply_mode_diag(int mode, const Vector& diag);
    void apply_parity_rotation(int mode, double theta);
    void apply_joint_parity(int mode_a, int mode_b, double theta);
    // R_a(-pi/4) R_b(-pi/4) E_ab(pi/4).
    void apply_cphase(int mode_a, int mode_b);
    void dephase_trajectory(int mode, double kappa_t, RandomStream& rng);

    // <Psi| (x)_k ops[k] |Psi> / <Psi|Psi>; identity for empty slots.
    cplx expectation(const std::vector<const Matrix*>& ops) const;
    double norm_squared() const;

    // Homodyne q-measurement of one mode: samples x from the mode marginal,
    // contracts <x| into the state (the measured mode is consumed) and
    // renormalizes. The record weight is the probability mass of the sampled
    // sign branch; the logical bit is the sign of x (x = 0 maps to +).
    measurement::MeasurementRecord measure_homodyne_x(int mode, RandomStream& rng);
    // Parity rotation R(theta/2) then homodyne sign readout.
    measurement::MeasurementRecord measure_xy(int mode, double theta, RandomStream& rng);

    // Dense state vector (x)-expansion, for cross-checks at small sizes.
    Vector dense() const;

  private:
    struct Term {
        cplx coeff;
        std::uint32_t pattern;
    };

    void merge_terms();
    double parity_overlap(int mode) const;  // <v|P|v> (real)

    std::vector<Vector> bases_;
    std::vector<Term> terms_;
};

}  // namespace qsplab::multimode
