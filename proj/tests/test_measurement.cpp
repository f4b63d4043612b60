#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsplab/encoding.hpp"
#include "qsplab/gates.hpp"
#include "qsplab/measurement.hpp"
#include "qsplab/states.hpp"

using namespace qsplab;
using encoding::ApoSet;
using fock::cplx;
using fock::FockSpace;
using fock::Matrix;
using fock::Vector;
using measurement::MeasurementRecord;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("half-line projectors resolve the identity and square to themselves") {
    FockSpace space(30);
    ApoSet apo = encoding::apo_set(space);
    auto [plus, minus] = measurement::half_line_projectors(apo);
    CHECK((plus + minus - Matrix::Identity(30, 30)).norm() < 1e-12);
    CHECK((plus - 0.5 * (Matrix::Identity(30, 30) + apo.X)).norm() < 1e-12);

    // idempotence fails only through the sign-matrix truncation defect, which
    // lives near the cutoff boundary; on low Fock levels it decays ~ D^{-1/2}
    auto low_block_defect = [](int dim) {
        FockSpace s(dim);
        auto [p, m] = measurement::half_line_projectors(encoding::apo_set(s));
        (void)m;
        return Matrix(p * p - p).topLeftCorner(8, 8).norm();
    };
    double d30 = low_block_defect(30);
    double d120 = low_block_defect(120);
    CHECK(d30 < 0.07);
    CHECK(d120 < 0.6 * d30);
}

TEST_CASE("vacuum splits the sign measurement evenly") {
    FockSpace space(20);
    ApoSet apo = encoding::apo_set(space);
    Matrix rho = Matrix::Zero(20, 20);
    rho(0, 0) = 1.0;
    double w = 0.0;
    (void)measurement::project_x(rho, apo, 0, &w);
    CHECK(w == doctest::Approx(0.5).epsilon(1e-9));
    double wm = 0.0;
    (void)measurement::project_x(rho, apo, 1, &wm);
    CHECK(w + wm == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("minus branch weight matches the analytic infidelity") {
    for (auto [nb, a] : {std::pair{0.0, 1.0}, {0.5, 1.2}, {1.0, 1.5}}) {
        int cut = states::policy_cutoff(a, nb);
        FockSpace space(cut);
        ApoSet apo = encoding::apo_set(space);
        Matrix rho = states::displaced_thermal({nb, a}, space);
        double w = 0.0;
        (void)measurement::project_x(rho, apo, 1, &w);
        CHECK(w == doctest::Approx(states::init_infidelity_analytic(nb, a)).epsilon(5e-3));
    }
}

TEST_CASE("parity projection collapses onto one sector and renormalizes") {
    FockSpace space(40);
    ApoSet apo = encoding::apo_set(space);
    Matrix rho = states::displaced_thermal({0.5, 2.0}, space);
    double w0 = 0.0, w1 = 0.0;
    Matrix even = measurement::project_z(rho, apo, 0, &w0);
    Matrix odd = measurement::project_z(rho, apo, 1, &w1);
    CHECK(w0 + w1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(even.trace() - cplx(1.0)) < 1e-10);
    for (int m = 1; m < 40; m += 2) CHECK(std::real(even(m, m)) == 0.0);
    for (int m = 0; m < 40; m += 2) CHECK(std::real(odd(m, m)) == 0.0);
}

TEST_CASE("projection is idempotent") {
    FockSpace space(30);
    ApoSet apo = encoding::apo_set(space);
    Matrix rho = states::displaced_thermal({0.3, 1.5}, space);
    double w1 = 0.0, w2 = 0.0;
    Matrix once = measurement::project_z(rho, apo, 0, &w1);
    Matrix twice = measurement::project_z(once, apo, 0, &w2);
    CHECK(w2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK((twice - once).norm() < 1e-10);
}

TEST_CASE("zero-probability branch is rejected") {
    FockSpace space(20);
    ApoSet apo = encoding::apo_set(space);
    Matrix rho = Matrix::Zero(20, 20);
    rho(0, 0) = 1.0;  // vacuum is exactly even
    double w = 0.0;
    CHECK_THROWS_AS((void)measurement::project_z(rho, apo, 1, &w), ConfigError);
}

TEST_CASE("xy probability reduces to the X measurement at theta = 0") {
    FockSpace space(40);
    ApoSet apo = encoding::apo_set(space);
    Matrix rho = states::displaced_thermal({0.5, 2.0}, space);
    double p0 = measurement::xy_probability_plus(rho, apo, 0.0);
    double w = 0.0;
    (void)measurement::project_x(rho, apo, 0, &w);
    CHECK(p0 == doctest::Approx(w).epsilon(1e-9));
}

TEST_CASE("xy probability on |+_L> follows cos^2(theta/2)") {
    states::ThermalParams p{0.0, 4.0};
    FockSpace space(states::policy_cutoff(p));
    ApoSet apo = encoding::apo_set(space);
    Matrix rho = states::displaced_thermal(p, space);
    for (double th : {0.0, 0.4, pi / 3.0, pi / 2.0, 2.2}) {
        double want = std::cos(th / 2.0) * std::cos(th / 2.0);
        CHECK(measurement::xy_probability_plus(rho, apo, th) ==
              doctest::Approx(want).epsilon(2e-2));
    }
}

TEST_CASE("plus probability depends on the state only through <X> and <Y>") {
    FockSpace space(40);
    ApoSet apo = encoding::apo_set(space);
    Matrix a = states::displaced_thermal({0.4, 1.8}, space);
    // dephasing moves the physical state but leaves Z fixed; the logical
    // formula must track the rotated Bloch components exactly
    Matrix b = states::dephase(a, 0.15);
    for (const Matrix& rho : {a, b}) {
        auto bv = encoding::bloch(encoding::logical_qubit(rho, apo));
        for (double th : {0.3, 1.1, 2.5}) {
            double direct = measurement::xy_probability_plus(rho, apo, th);
            double formula = 0.5 * (1.0 + std::cos(th) * bv[0] + std::sin(th) * bv[1]);
            CHECK(direct == doctest::Approx(formula).epsilon(1e-6));
        }
    }
}

TEST_CASE("t-state feeds the pi/4 measurement with high plus probability") {
    states::ThermalParams p{0.0, 4.0};
    FockSpace space(states::policy_cutoff(p));
    ApoSet apo = encoding::apo_set(space);
    Matrix rho = gates::t_state_prep(p, space);
    CHECK(measurement::xy_probability_plus(rho, apo, pi / 4.0) >= 0.97);
}

TEST_CASE("sampled measurement agrees with branch weights") {
    FockSpace space(24);
    ApoSet apo = encoding::apo_set(space);
    Matrix rho = states::displaced_thermal({0.5, 1.0}, space);
    double w_plus = 0.0;
    (void)measurement::project_x(rho, apo, 0, &w_plus);
    RandomStream rng(31);
    int plus = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        MeasurementRecord rec;
        auto local = rng.split(i);
        (void)measurement::measure_logical_x(rho, apo, local, &rec);
        plus += (rec.logical_bit == 0);
        CHECK(rec.basis == "X");
        CHECK((rec.raw_x == 1.0 || rec.raw_x == -1.0));
        CHECK(rec.weight == doctest::Approx(rec.logical_bit == 0 ? w_plus : 1.0 - w_plus)
                                .epsilon(1e-9));
    }
    double freq = double(plus) / n;
    double sigma = std::sqrt(w_plus * (1.0 - w_plus) / n);
    CHECK(std::abs(freq - w_plus) < 3.0 * sigma + 1e-12);
}

TEST_CASE("homodyne sampling of the vacuum matches Gaussian moments") {
    FockSpace space(16);
    Matrix rho = Matrix::Zero(16, 16);
    rho(0, 0) = 1.0;
    auto grid = fock::default_qgrid(16);
    RandomStream rng(8);
    const int n = 100000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double x = measurement::homodyne_sample_q(rho, grid, rng);
        s1 += x;
        s2 += x * x;
    }
    double mean = s1 / n, var = s2 / n - mean * mean;
    // vacuum q-variance is 1/2 in this convention
    CHECK(std::abs(mean) < 3.0 * std::sqrt(0.5 / n));
    CHECK(std::abs(var - 0.5) < 0.01);
}

TEST_CASE("homodyne mean of a displaced state is sqrt(2) alpha") {
    FockSpace space(40);
    Vector psi = states::coherent_vector(2.0, space);
    psi /= psi.norm();
    auto grid = fock::default_qgrid(40);
    RandomStream rng(9);
    const int n = 50000;
    double s1 = 0.0;
    for (int i = 0; i < n; ++i) s1 += measurement::homodyne_sample_q(psi, grid, rng);
    CHECK(s1 / n == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(4e-3));
}

TEST_CASE("inverse-CDF sampler reproduces a triangular density") {
    fock::RealVector xs(101), den(101);
    for (int i = 0; i <= 100; ++i) {
        double x = double(i) / 100.0;
        xs(i) = x;
        den(i) = 2.0 * x;  // CDF x^2 on [0, 1]
    }
    RandomStream rng(123);
    const int n = 200000;
    double s1 = 0.0;
    int below_half = 0;
    for (int i = 0; i < n; ++i) {
        double x = measurement::sample_from_density(xs, den, rng);
        REQUIRE(x >= 0.0);
        REQUIRE(x <= 1.0);
        s1 += x;
        below_half += (x < 0.5);
    }
    CHECK(s1 / n == doctest::Approx(2.0 / 3.0).epsilon(3e-3));
    CHECK(double(below_half) / n == doctest::Approx(0.25).epsilon(2e-2));
}
