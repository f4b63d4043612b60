#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qsplab/errors.hpp"

namespace qsplab::fock {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Truncated single-mode Fock space with levels |0..dim-1>.
// Convention: a = (q + i p)/sqrt(2), so vacuum q-variance is 1/2 and a
// displaced state D(alpha)|0> with real alpha has <q> = sqrt(2) alpha.
struct FockSpace {
    int dim;
    explicit FockSpace(int d) : dim(d) {
        if (d < 2) throw ConfigError("FockSpace: dim must be >= 2");
    }
};

Matrix annihilation(const FockSpace& space);
RealVector parity_diag(const FockSpace& space);  // entries (-1)^n
Matrix parity(const FockSpace& space);

// exp(alpha a^dag - alpha^* a) of the truncated generator (unitary by
// construction). Throws NumericsError when |alpha|^2 + 3|alpha| + 3 > dim or
// when the sanity defect ||(U^H U - I)|| on the lowest ceil(dim/2) levels
// exceeds 1e-6.
Matrix displacement(cplx alpha, const FockSpace& space);
double unitarity_defect(const Matrix& u, int levels);

// Normalized Hermite function psi_n(x) by stable upward recurrence.
// Underflow guard: when exp(-x^2/2) vanishes in double precision the value 0
// is returned and *underflow (if given) is set.
double hermite_psi(int n, double x, bool* underflow = nullptr);
// Table with rows n = 0..nmax-1 over the given abscissae.
RealMatrix hermite_table(int nmax, const RealVector& xs);

struct QuadratureRule {
    RealVector x;
    RealVector w;
};
QuadratureRule gauss_legendre(int n);
QuadratureRule composite_rule(double a, double b, int panels, int nodes_per_panel = 32);

// Half-line integration range for sign_q at a given cutoff.
double sign_q_xmax(int dim);

// Matrix of sign(q): S_mn = 2 * int_0^inf psi_m psi_n dx for odd m+n, zero
// otherwise (exact sparsity enforced). Panel-refinement disagreement above
// 1e-10 raises NumericsError.
RealMatrix sign_q(const FockSpace& space);

// Operator square of sign(q) assembled by the same quadrature over the full
// line (sign^2 = 1 pointwise, so this is the quadrature Gram matrix). Used to
// verify the involution on states independently of matrix truncation.
RealMatrix sign_q_square(const FockSpace& space);

Matrix tensor(const Matrix& a, const Matrix& b);
// Partial trace of a two-mode density matrix with mode dims (d1, d2);
// keep = 0 keeps mode 1, keep = 1 keeps mode 2.
Matrix partial_trace(const Matrix& rho, int d1, int d2, int keep);
cplx expectation(const Matrix& op, const Matrix& rho);
Vector apply(const Matrix& op, const Vector& v);

struct QGrid {
    double xmin;
    double xmax;
    int n;
};
QGrid default_qgrid(int dim, int points = 2048);

// P(x) = <x|rho|x> over the grid. Throws NumericsError when the mass outside
// the grid (1 - trapezoid integral) exceeds 1e-6.
RealVector q_marginal(const Matrix& rho, const QGrid& grid);
RealVector q_marginal_vec(const Vector& psi, const QGrid& grid);
RealVector qgrid_points(const QGrid& grid);

}  // namespace qsplab::fock
