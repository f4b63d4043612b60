#pragma once

#include <vector>

#include "qsplab/fock.hpp"
#include "qsplab/rng.hpp"

namespace qsplab::states {

using fock::cplx;
using fock::Matrix;
using fock::Vector;

struct ThermalParams {
    double n_bar = 0.0;
    cplx alpha = 0.0;
};

// Default cutoff policy for displaced thermal states: tail mass <= 1e-6.
int policy_cutoff(double alpha_abs, double n_bar);
int policy_cutoff(const ThermalParams& p);

// Geometric Fock-diagonal thermal state, renormalized on the truncated space.
// Throws NumericsError when the truncated tail mass exceeds 1e-6.
Matrix thermal_state(double n_bar, const fock::FockSpace& space);
double thermal_tail_defect(double n_bar, int dim);  // pre-renormalization tail

Matrix displaced_thermal(const ThermalParams& p, const fock::FockSpace& space);

// 1/2 erfc(alpha / sqrt(n_bar + 1/2)).
double init_infidelity_analytic(double n_bar, double alpha);

Vector coherent_vector(cplx amplitude, const fock::FockSpace& space);

// Coherent-ensemble view of the displaced thermal state: beta sampled with
// independent N(0, n_bar/2) parts, states |alpha + beta>.
std::vector<Vector> sample_coherent_ensemble(const ThermalParams& p, RandomStream& rng,
                                             int count, const fock::FockSpace& space);

// Computational-basis preparation by parity projection of the displaced
// thermal state: bit 0 keeps the even subspace, bit 1 the odd one (the
// post-selected branch of a parity measurement on |+_L>).
Matrix parity_projected_basis(const ThermalParams& p, int bit, const fock::FockSpace& space);

// Exact dephasing channel: rho_mn -> rho_mn exp(-kt (m-n)^2 / 2).
Matrix dephase(const Matrix& rho, double kappa_t);

// One trajectory draw: phase rotation e^{-i phi n} with phi ~ N(0, kt).
Vector dephase_trajectory(const Vector& psi, double kappa_t, RandomStream& rng);

double tail_mass(const Matrix& rho, int from_level);

}  // namespace qsplab::states
