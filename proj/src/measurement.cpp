#include "qsplab/measurement.hpp"

#include <algorithm>
#include <cmath>

#include "qsplab/gates.hpp"

namespace qsplab::measurement {

namespace {

constexpr double kZeroBranch = 1e-12;

Matrix project_with(const Matrix& proj, const Matrix& rho, double* weight) {
    // branch probability Tr{P rho}; the collapsed state is renormalized by its
    // own trace, which differs from the probability only by the sign-matrix
    // truncation defect
    double w = (proj.transpose().cwiseProduct(rho)).sum().real();
    if (w < kZeroBranch) throw ConfigError("measurement: zero-probability branch requested");
    if (weight != nullptr) *weight = w;
    Matrix collapsed = proj * rho * proj;
    double norm = collapsed.trace().real();
    if (norm < kZeroBranch) throw ConfigError("measurement: zero-probability branch requested");
    return collapsed / norm;
}

Matrix measure_two_branch(const Matrix& rho, const Matrix& p_plus, const Matrix& p_minus,
                          RandomStream& rng, MeasurementRecord* record) {
    double w_plus = (p_plus.transpose().cwiseProduct(rho)).sum().real();
    w_plus = std::clamp(w_plus, 0.0, 1.0);
    int bit = rng.uniform() < w_plus ? 0 : 1;
    double w = 0.0;
    Matrix out = project_with(bit == 0 ? p_plus : p_minus, rho, &w);
    if (record != nullptr) {
        record->logical_bit = bit;
        record->raw_x = bit == 0 ? 1.0 : -1.0;
        record->weight = w;
    }
    return out;
}

}  // namespace

std::pair<Matrix, Matrix> half_line_projectors(const encoding::ApoSet& apos) {
    Matrix id = Matrix::Identity(apos.dim, apos.dim);
    return {(id + apos.X) / 2.0, (id - apos.X) / 2.0};
}

std::pair<Matrix, Matrix> parity_projectors(const encoding::ApoSet& apos) {
    Matrix id = Matrix::Identity(apos.dim, apos.dim);
    return {(id + apos.Z) / 2.0, (id - apos.Z) / 2.0};
}

Matrix project_x(const Matrix& rho, const encoding::ApoSet& apos, int bit, double* weight) {
    auto [plus, minus] = half_line_projectors(apos);
    return project_with(bit == 0 ? plus : minus, rho, weight);
}

Matrix project_z(const Matrix& rho, const encoding::ApoSet& apos, int bit, double* weight) {
    auto [plus, minus] = parity_projectors(apos);
    return project_with(bit == 0 ? plus : minus, rho, weight);
}

Matrix measure_logical_x(const Matrix& rho, const encoding::ApoSet& apos, RandomStream& rng,
                         MeasurementRecord* record) {
    auto [plus, minus] = half_line_projectors(apos);
    if (record != nullptr) record->basis = "X";
    return measure_two_branch(rho, plus, minus, rng, record);
}

Matrix measure_logical_z(const Matrix& rho, const encoding::ApoSet& apos, RandomStream& rng,
                         MeasurementRecord* record) {
    auto [plus, minus] = parity_projectors(apos);
    if (record != nullptr) record->basis = "Z";
    return measure_two_branch(rho, plus, minus, rng, record);
}

Matrix measure_xy(const Matrix& rho, const encoding::ApoSet& apos, double theta,
                  RandomStream& rng, MeasurementRecord* record) {
    fock::FockSpace space(apos.dim);
    Matrix r = gates::parity_rotation(theta / 2.0, space);
    Matrix rotated = r * rho * r.adjoint();
    Matrix out = measure_logical_x(rotated, apos, rng, record);
    if (record != nullptr) {
        record->basis = "XY";
        record->theta = theta;
    }
    return out;
}

double xy_probability_plus(const Matrix& rho, const encoding::ApoSet& apos, double theta) {
    double x = fock::expectation(apos.X, rho).real();
    double y = fock::expectation(apos.Y, rho).real();
    return 0.5 * (1.0 + std::cos(theta) * x + std::sin(theta) * y);
}

double sample_from_density(const RealVector& xs, const RealVector& density, RandomStream& rng) {
    int n = int(xs.size());
    // trapezoid CDF over the grid cells
    RealVector cdf(n);
    cdf(0) = 0.0;
    for (int i = 1; i < n; ++i) {
        double cell = 0.5 * (density(i - 1) + density(i)) * (xs(i) - xs(i - 1));
        cdf(i) = cdf(i - 1) + std::max(cell, 0.0);
    }
    double total = cdf(n - 1);
    if (!(total > 0.0)) throw NumericsError("homodyne sample: density integrates to zero");
    double target = rng.uniform() * total;
    int lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        (cdf(mid) <= target) ? lo = mid : hi = mid;
    }
    double cell = cdf(hi) - cdf(lo);
    double frac = cell > 0.0 ? (target - cdf(lo)) / cell : 0.5;
    return xs(lo) + frac * (xs(hi) - xs(lo));
}

double homodyne_sample_q(const Matrix& rho, const fock::QGrid& grid, RandomStream& rng) {
    return sample_from_density(fock::qgrid_points(grid), fock::q_marginal(rho, grid), rng);
}

double homodyne_sample_q(const Vector& psi, const fock::QGrid& grid, RandomStream& rng) {
    return sample_from_density(fock::qgrid_points(grid), fock::q_marginal_vec(psi, grid), rng);
}

}  // namespace qsplab::measurement
