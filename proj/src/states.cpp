#include "qsplab/states.hpp"

#include <cmath>

namespace qsplab::states {

namespace {
int policy_formula(double alpha_abs, double n_bar) {
    double spread = alpha_abs + std::sqrt(3.0 * n_bar);
    return std::max(16, int(std::ceil(2.5 * spread * spread + 10.0)));
}
}  // namespace

namespace {
Eigen::VectorXd thermal_populations(double n_bar, int dim) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
    if (n_bar <= 0.0) {
        p(0) = 1.0;
        return p;
    }
    double ratio = n_bar / (n_bar + 1.0);
    double cur = 1.0 / (n_bar + 1.0);
    for (int n = 0; n < dim; ++n) {
        p(n) = cur;
        cur *= ratio;
    }
    return p;
}
}  // namespace

int policy_cutoff(double alpha_abs, double n_bar) {
    int base = policy_formula(alpha_abs, n_bar);
    // The formula alone can leave slightly more than the 1e-6 tail budget at
    // small alpha with large n_bar; probe the populations at a larger
    // dimension and extend until the discarded mass fits with 2x headroom.
    int probe_dim = base + 32;
    fock::FockSpace probe(probe_dim);
    Matrix u = fock::displacement(alpha_abs, probe);
    Eigen::VectorXd pops =
        (u * thermal_populations(n_bar, probe_dim).cast<cplx>().asDiagonal() * u.adjoint())
            .diagonal()
            .real();
    double tail = 0.0;
    for (int level = probe_dim - 1; level >= base - 1; --level) {
        tail += pops(level);
        if (tail > 5e-7) return std::min(probe_dim, level + 2);
    }
    return base;
}

int policy_cutoff(const ThermalParams& p) { return policy_cutoff(std::abs(p.alpha), p.n_bar); }

double thermal_tail_defect(double n_bar, int dim) {
    if (n_bar <= 0.0) return 0.0;
    // sum_{n>=D} p_n = (n_bar/(n_bar+1))^D
    return std::pow(n_bar / (n_bar + 1.0), dim);
}

Matrix thermal_state(double n_bar, const fock::FockSpace& space) {
    if (n_bar < 0.0) throw ConfigError("thermal_state: n_bar must be >= 0");
    double defect = thermal_tail_defect(n_bar, space.dim);
    if (defect > 1e-6)
        throw NumericsError("thermal_state: truncated tail mass " + std::to_string(defect));
    Eigen::VectorXd p(space.dim);
    if (n_bar == 0.0) {
        p.setZero();
        p(0) = 1.0;
    } else {
        double ratio = n_bar / (n_bar + 1.0);
        double cur = 1.0 / (n_bar + 1.0);
        for (int n = 0; n < space.dim; ++n) {
            p(n) = cur;
            cur *= ratio;
        }
        p /= p.sum();
    }
    Matrix rho = Matrix::Zero(space.dim, space.dim);
    rho.diagonal() = p.cast<cplx>();
    return rho;
}

Matrix displaced_thermal(const ThermalParams& p, const fock::FockSpace& space) {
    Matrix u = fock::displacement(p.alpha, space);
    Matrix rho = u * thermal_state(p.n_bar, space) * u.adjoint();
    double tail = tail_mass(rho, space.dim - 1);
    if (tail > 1e-6)
        throw NumericsError("displaced_thermal: tail mass " + std::to_string(tail) +
                            " above 1e-6; increase the cutoff");
    // The conjugation is trace-exact up to rounding.
    rho /= std::real(rho.trace());
    return rho;
}

double init_infidelity_analytic(double n_bar, double alpha) {
    if (alpha < 0.0) throw ConfigError("init_infidelity_analytic: alpha must be >= 0");
    return 0.5 * std::erfc(alpha / std::sqrt(n_bar + 0.5));
}

Vector coherent_vector(cplx amplitude, const fock::FockSpace& space) {
    Vector v(space.dim);
    double r = std::abs(amplitude);
    double phase = (r > 0.0) ? std::arg(amplitude) : 0.0;
    // log-magnitude recurrence avoids overflow in alpha^n / sqrt(n!)
    double log_mag = -0.5 * r * r;
    v(0) = std::exp(log_mag);
    for (int n = 1; n < space.dim; ++n) {
        log_mag += (r > 0.0 ? std::log(r) : -745.0) - 0.5 * std::log(double(n));
        v(n) = std::polar(std::exp(log_mag), phase * n);
    }
    return v;
}

std::vector<Vector> sample_coherent_ensemble(const ThermalParams& p, RandomStream& rng,
                                             int count, const fock::FockSpace& space) {
    std::vector<Vector> out;
    out.reserve(count);
    double sigma = std::sqrt(std::max(0.0, p.n_bar) / 2.0);
    for (int i = 0; i < count; ++i) {
        cplx beta = (p.n_bar > 0.0) ? cplx(rng.normal(0.0, sigma), rng.normal(0.0, sigma))
                                    : cplx(0.0, 0.0);
        Vector v = coherent_vector(p.alpha + beta, space);
        out.push_back(v / v.norm());
    }
    return out;
}

Matrix parity_projected_basis(const ThermalParams& p, int bit, const fock::FockSpace& space) {
    if (bit != 0 && bit != 1) throw ConfigError("parity_projected_basis: bit must be 0 or 1");
    Matrix rho = displaced_thermal(p, space);
    // diagonal projector (I +- P)/2 zeroes the opposite-parity rows/columns
    for (int m = 0; m < space.dim; ++m)
        for (int n = 0; n < space.dim; ++n)
            if (m % 2 != bit || n % 2 != bit) rho(m, n) = 0.0;
    double w = rho.trace().real();
    if (w < 1e-12) throw NumericsError("parity_projected_basis: vanishing branch weight");
    return rho / w;
}

Matrix dephase(const Matrix& rho, double kappa_t) {
    if (kappa_t < 0.0) throw ConfigError("dephase: kappa_t must be >= 0");
    Matrix out = rho;
    int d = int(rho.rows());
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            if (m == n) continue;
            double diff = double(m - n);
            out(m, n) *= std::exp(-kappa_t * diff * diff / 2.0);
        }
    return out;
}

Vector dephase_trajectory(const Vector& psi, double kappa_t, RandomStream& rng) {
    if (kappa_t < 0.0) throw ConfigError("dephase_trajectory: kappa_t must be >= 0");
    double phi = rng.normal(0.0, std::sqrt(kappa_t));
    Vector out(psi.size());
    for (Eigen::Index n = 0; n < psi.size(); ++n)
        out(n) = psi(n) * std::polar(1.0, -phi * double(n));
    return out;
}

double tail_mass(const Matrix& rho, int from_level) {
    double tail = 0.0;
    for (Eigen::Index n = std::max(0, from_level); n < rho.rows(); ++n)
        tail += std::real(rho(n, n));
    return tail;
}

}  // namespace qsplab::states
