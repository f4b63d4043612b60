#include "qsplab/gates.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qsplab::gates {

Vector parity_rotation_diag(double theta, const fock::FockSpace& space) {
    Vector d(space.dim);
    cplx even = std::polar(1.0, theta);
    cplx odd = std::polar(1.0, -theta);
    for (int n = 0; n < space.dim; ++n) d(n) = (n % 2 == 0) ? even : odd;
    return d;
}

Matrix parity_rotation(double theta, const fock::FockSpace& space) {
    return parity_rotation_diag(theta, space).asDiagonal();
}

Vector joint_parity_diag(double theta, int d1, int d2) {
    Vector d(Eigen::Index(d1) * d2);
    cplx plus = std::polar(1.0, theta);
    cplx minus = std::polar(1.0, -theta);
    for (int m = 0; m < d1; ++m)
        for (int n = 0; n < d2; ++n) d(Eigen::Index(m) * d2 + n) = ((m + n) % 2 == 0) ? plus : minus;
    return d;
}

Vector cphase_diag(int d1, int d2) {
    constexpr double quarter = std::numbers::pi / 4.0;
    Vector r1 = parity_rotation_diag(-quarter, fock::FockSpace(d1));
    Vector r2 = parity_rotation_diag(-quarter, fock::FockSpace(d2));
    Vector e = joint_parity_diag(quarter, d1, d2);
    Vector out(Eigen::Index(d1) * d2);
    for (int m = 0; m < d1; ++m)
        for (int n = 0; n < d2; ++n) {
            Eigen::Index idx = Eigen::Index(m) * d2 + n;
            out(idx) = r1(m) * r2(n) * e(idx);
        }
    return out;
}

Vector cphase_diag_direct(int d1, int d2) {
    cplx global = std::polar(1.0, -std::numbers::pi / 4.0);
    Vector out(Eigen::Index(d1) * d2);
    for (int m = 0; m < d1; ++m)
        for (int n = 0; n < d2; ++n)
            out(Eigen::Index(m) * d2 + n) = (m % 2 == 1 && n % 2 == 1) ? -global : global;
    return out;
}

Matrix apply_two_mode_diag(const Vector& diag, const Matrix& rho2) {
    if (diag.size() != rho2.rows()) throw ConfigError("apply_two_mode_diag: dimension mismatch");
    return diag.asDiagonal() * rho2 * diag.conjugate().asDiagonal();
}

Matrix t_state_prep(const states::ThermalParams& p, const fock::FockSpace& space) {
    Matrix rho = states::displaced_thermal(p, space);
    Matrix r = parity_rotation(t_state_angle, space);
    return r * rho * r.adjoint();
}

TruncationBudget truncation_budget(double n_bar, double tol) {
    if (n_bar < 0.0) throw ConfigError("truncation_budget: n_bar must be >= 0");
    if (tol <= 0.0) throw ConfigError("truncation_budget: tol must be > 0");
    TruncationBudget b;
    b.n_bar = n_bar;
    b.tol = tol;
    b.lambda = 12.0 * (n_bar + 0.5);
    b.r_max = int(std::ceil(30.0 * (n_bar + 0.5)));
    double x = std::numbers::pi * b.r_max;
    int k = int(std::floor(x));
    while (k + 1 <= x) ++k;
    while (series_tail_bound_log(double(b.r_max), k) > std::log(tol)) ++k;
    b.k_max = k;
    return b;
}

double series_tail_bound_log(double r, int k) {
    double x = std::numbers::pi * r;
    if (k + 1 <= x) return std::numeric_limits<double>::infinity();
    return k * std::log(x) - std::lgamma(double(k) + 1.0) - std::log1p(-x / (k + 1));
}

cplx naive_parity_partial_sum(int n, int k_max) {
    cplx z(0.0, std::numbers::pi * n);
    cplx term = 1.0;
    cplx sum = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        sum += term;
        term *= z / double(k + 1);
    }
    return sum;
}

}  // namespace qsplab::gates
