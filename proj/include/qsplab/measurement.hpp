#pragma once

#include <string>
#include <utility>

#include "qsplab/encoding.hpp"
#include "qsplab/fock.hpp"
#include "qsplab/rng.hpp"

namespace qsplab::measurement {

using fock::cplx;
using fock::Matrix;
using fock::RealVector;
using fock::Vector;

struct MeasurementRecord {
    int mode = 0;
    std::string basis;    // "X", "Z" or "XY"
    double theta = 0.0;   // plane angle for XY records
    double raw_x = 0.0;   // homodyne outcome when sampled, +-1 otherwise
    int logical_bit = 0;  // 0 for outcome +, 1 for outcome -
    double weight = 1.0;  // probability mass of the collapsed branch
};

// Half-line projectors (I +- X)/2 built from the same quadrature rule as the
// sign operator, so (P_plus + P_minus) = I to machine precision.
std::pair<Matrix, Matrix> half_line_projectors(const encoding::ApoSet& apos);

// Parity projectors (I +- Z)/2 (exact diagonals).
std::pair<Matrix, Matrix> parity_projectors(const encoding::ApoSet& apos);

// Deterministic collapse onto the requested branch (0 = +, 1 = -).
// Throws ConfigError when the branch weight is below 1e-12.
Matrix project_x(const Matrix& rho, const encoding::ApoSet& apos, int bit, double* weight);
Matrix project_z(const Matrix& rho, const encoding::ApoSet& apos, int bit, double* weight);

// Sampled logical X measurement: branch chosen by weight, collapsed state
// renormalized, record filled with outcome and weight.
Matrix measure_logical_x(const Matrix& rho, const encoding::ApoSet& apos, RandomStream& rng,
                         MeasurementRecord* record);
Matrix measure_logical_z(const Matrix& rho, const encoding::ApoSet& apos, RandomStream& rng,
                         MeasurementRecord* record);

// XY-plane measurement at angle theta: parity rotation R(theta/2) followed by
// the logical X measurement. P(+) = (1 + cos(theta) <X> + sin(theta) <Y>)/2.
Matrix measure_xy(const Matrix& rho, const encoding::ApoSet& apos, double theta,
                  RandomStream& rng, MeasurementRecord* record);
double xy_probability_plus(const Matrix& rho, const encoding::ApoSet& apos, double theta);

// Inverse-CDF homodyne sample of q from P(x) = <x|rho|x> on the grid.
// The outcome x = 0 (measure zero, possible on a grid) maps to the + branch.
double homodyne_sample_q(const Matrix& rho, const fock::QGrid& grid, RandomStream& rng);
double homodyne_sample_q(const Vector& psi, const fock::QGrid& grid, RandomStream& rng);

// Shared inverse-CDF step over a tabulated density (trapezoid CDF, linear
// interpolation inside the chosen cell).
double sample_from_density(const RealVector& xs, const RealVector& density, RandomStream& rng);

}  // namespace qsplab::measurement
