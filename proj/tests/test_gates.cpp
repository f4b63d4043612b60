#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsplab/encoding.hpp"
#include "qsplab/gates.hpp"
#include "qsplab/states.hpp"

using namespace qsplab;
using fock::cplx;
using fock::FockSpace;
using fock::Matrix;
using fock::Vector;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("parity rotation basics") {
    FockSpace space(12);
    Vector d0 = gates::parity_rotation_diag(0.0, space);
    for (int n = 0; n < 12; ++n) CHECK(d0(n) == cplx(1.0));
    Vector d = gates::parity_rotation_diag(0.3, space);
    for (int n = 0; n < 12; ++n) {
        cplx want = std::polar(1.0, 0.3 * (n % 2 ? -1.0 : 1.0));
        CHECK(std::abs(d(n) - want) < 1e-15);
    }
    // composition and inverse
    Matrix r1 = gates::parity_rotation(0.4, space);
    Matrix r2 = gates::parity_rotation(-0.15, space);
    Matrix r3 = gates::parity_rotation(0.25, space);
    CHECK((r1 * r2 - r3).norm() < 1e-13);
    CHECK((r1 * r1.adjoint() - Matrix::Identity(12, 12)).norm() < 1e-14);
}

TEST_CASE("parity rotation conjugates X into cos X + sin Y") {
    FockSpace space(30);
    auto apo = encoding::apo_set(space);
    for (double phi : {0.1, -0.35, pi / 8.0}) {
        Matrix r = gates::parity_rotation(phi, space);
        Matrix lhs = r.adjoint() * apo.X * r;
        Matrix rhs = std::cos(2.0 * phi) * apo.X + std::sin(2.0 * phi) * apo.Y;
        CHECK((lhs - rhs).norm() < 1e-12);
    }
}

TEST_CASE("joint parity diagonal entries") {
    Vector e = gates::joint_parity_diag(0.7, 3, 4);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 4; ++n) {
            cplx want = std::polar(1.0, 0.7 * ((m + n) % 2 ? -1.0 : 1.0));
            CHECK(std::abs(e(m * 4 + n) - want) < 1e-15);
        }
}

TEST_CASE("cphase composition equals the direct per-sector form") {
    Vector composed = gates::cphase_diag(16, 16);
    Vector direct = gates::cphase_diag_direct(16, 16);
    CHECK((composed - direct).norm() < 1e-12);
}

TEST_CASE("cphase puts the -1 exactly on odd-odd Fock pairs") {
    int d = 8;
    Vector diag = gates::cphase_diag(d, d);
    cplx global = std::polar(1.0, -pi / 4.0);
    CHECK(std::abs(diag(2 * d + 3) - global * cplx(1.0)) < 1e-13);   // |2>|3>: even-odd
    CHECK(std::abs(diag(1 * d + 3) - global * cplx(-1.0)) < 1e-13);  // |1>|3>: odd-odd
    CHECK(std::abs(diag(2 * d + 4) - global * cplx(1.0)) < 1e-13);   // even-even
}

TEST_CASE("apply_two_mode_diag conjugates like the dense diagonal") {
    int d = 5;
    Matrix a = Matrix::Random(d, d), b = Matrix::Random(d, d);
    Matrix rho = fock::tensor(a + a.adjoint() + 4.0 * Matrix::Identity(d, d),
                              b + b.adjoint() + 4.0 * Matrix::Identity(d, d));
    rho /= rho.trace();
    Vector diag = gates::cphase_diag(d, d);
    Matrix dm = diag.asDiagonal();
    CHECK((gates::apply_two_mode_diag(diag, rho) - dm * rho * dm.adjoint()).norm() < 1e-12);
}

TEST_CASE("t-state preparation lands on the equator at 45 degrees") {
    states::ThermalParams p{0.0, 4.0};
    FockSpace space(states::policy_cutoff(p));
    auto apo = encoding::apo_set(space);
    Matrix rho = gates::t_state_prep(p, space);
    auto b = encoding::bloch(encoding::logical_qubit(rho, apo));
    CHECK(b[0] == doctest::Approx(std::cos(pi / 4.0)).epsilon(1e-5));
    CHECK(b[1] == doctest::Approx(std::sin(pi / 4.0)).epsilon(1e-5));
    CHECK(std::abs(b[2]) < 1e-9);
}

TEST_CASE("entangling gate output does not depend on the thermal occupation") {
    // the logical action is set by parity sectors alone, so the extracted
    // two-qubit state must match across very different physical noise levels
    double alpha = 2.5;
    auto run = [&](double nb) {
        int cut = states::policy_cutoff(alpha, nb);
        FockSpace space(cut);
        auto apo = encoding::apo_set(space);
        Matrix rho = states::displaced_thermal({nb, alpha}, space);
        Matrix rho2 = fock::tensor(rho, rho);
        rho2 = gates::apply_two_mode_diag(gates::cphase_diag(cut, cut), rho2);
        return encoding::logical_state_2mode(rho2, apo);
    };
    auto base = run(0.0);
    for (double nb : {0.5, 1.0}) {
        auto other = run(nb);
        CHECK(encoding::trace_distance(base, other) < 2e-2);
    }
}

TEST_CASE("truncation budget closed forms") {
    auto b0 = gates::truncation_budget(0.0);
    CHECK(b0.lambda == doctest::Approx(6.0));
    CHECK(b0.r_max == 15);
    auto b1 = gates::truncation_budget(0.5);
    CHECK(b1.lambda == doctest::Approx(12.0));
    CHECK(b1.r_max == 30);
    auto b2 = gates::truncation_budget(1.0);
    CHECK(b2.lambda == doctest::Approx(18.0));
    CHECK(b2.r_max == 45);
}

TEST_CASE("series order matches a directly summed tail oracle") {
    // oracle: first K with sum_{k>K} (pi r)^k / k! <= tol, summed in
    // extended-range doubles from the log-domain terms
    auto oracle = [](double r, double tol) {
        double x = pi * r;
        for (int k = 1; k < 4000; ++k) {
            if (k + 1 <= x) continue;  // bound needs K+1 > pi r
            double tail = 0.0;
            double log_term = k * std::log(x) - std::lgamma(double(k) + 1.0);
            for (int j = k; j < k + 3000; ++j) {
                tail += std::exp(log_term);
                log_term += std::log(x) - std::log(double(j + 1));
                if (log_term < std::log(tol) - 60.0) break;
            }
            if (tail <= tol) return k;
        }
        return -1;
    };
    for (auto [nb, tol] : {std::pair{0.0, 0.01}, {0.5, 0.01}, {0.5, 1e-3}, {2.8, 0.01}}) {
        auto b = gates::truncation_budget(nb, tol);
        int exact = oracle(double(b.r_max), tol);
        // analytic bound may overshoot the exact answer but never undershoots
        CHECK(b.k_max >= exact);
        CHECK(b.k_max <= exact + 5);
    }
    CHECK(gates::truncation_budget(0.5, 0.01).k_max == 258);
    CHECK(gates::truncation_budget(0.0, 0.01).k_max == 130);
}

TEST_CASE("k_max grows monotonically as the tolerance tightens") {
    int prev = 0;
    for (double tol : {1e-1, 1e-2, 1e-3, 1e-4}) {
        int k = gates::truncation_budget(0.5, tol).k_max;
        CHECK(k >= prev);
        prev = k;
    }
}
