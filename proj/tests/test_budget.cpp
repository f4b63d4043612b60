#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsplab/gates.hpp"
#include "qsplab/states.hpp"

using namespace qsplab;
using fock::cplx;
using fock::FockSpace;
using fock::Matrix;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("partial sum at n = 0 is exactly 1 for any order") {
    for (int k : {0, 5, 130, 400}) {
        cplx v = gates::parity_partial_sum(0, k);
        CHECK(v.real() == 1.0);
        CHECK(v.imag() == 0.0);
    }
}

TEST_CASE("partial sum converges to (-1)^n once the order clears pi n") {
    for (int n : {1, 4, 11, 30}) {
        double ideal = n % 2 == 0 ? 1.0 : -1.0;
        cplx far = gates::parity_partial_sum(n, int(std::ceil(pi * n)) * 3 + 60);
        CHECK(std::abs(far - cplx(ideal)) < 1e-20);
    }
}

TEST_CASE("defect decays as the order grows past the series peak") {
    int n = 12;
    double x = pi * n;
    double prev = 1e300;
    for (int k = int(x) + 8; k < int(x) + 120; k += 16) {
        double defect = std::abs(gates::parity_partial_sum(n, k) - cplx(1.0));
        CHECK(defect < prev);
        prev = defect;
    }
}

TEST_CASE("naive double summation collapses where the checked one holds") {
    // around n = 30 the alternating terms reach (pi n)^k / k! ~ 1e39: double
    // precision keeps no correct digits while the extended-precision sum
    // still lands on (-1)^n
    int n = 30;
    auto budget = gates::truncation_budget(0.5);
    REQUIRE(budget.r_max == 30);
    double naive_defect = std::abs(gates::naive_parity_partial_sum(n, budget.k_max) - cplx(1.0));
    CHECK(naive_defect > 1.0);
    double checked_defect = std::abs(gates::parity_partial_sum(n, budget.k_max) - cplx(1.0));
    CHECK(checked_defect < 1e-2);
}

TEST_CASE("gate report: weighted error small on the displaced thermal reference") {
    double n_bar = 0.5;
    auto budget = gates::truncation_budget(n_bar, 0.01);
    double alpha = std::sqrt(3.0 * (n_bar + 0.5));
    int cut = std::max(states::policy_cutoff(alpha, n_bar), budget.r_max + 2);
    FockSpace space(cut);
    Matrix ref = states::displaced_thermal({n_bar, alpha}, space);
    auto gate = gates::truncated_parity_gate(budget, pi / 4.0, space, ref);

    CHECK(gate.report.weighted_gate_error <= 0.05);
    CHECK(int(gate.report.levels.size()) == cut);
    CHECK(gate.report.precision_bits >= 192);
    // below r_max the partial sum tracks the ideal parity within tol-ish
    CHECK(gate.report.max_defect < 0.05);
    // the diagonal is a pure phase wherever the partial sum has converged
    for (int n = 0; n <= budget.r_max; ++n)
        CHECK(std::abs(std::abs(gate.diag(n)) - 1.0) < 0.05);
    // and matches e^{i theta (-1)^n} at small n to near machine precision
    for (int n = 0; n < 8; ++n) {
        cplx ideal = std::polar(1.0, pi / 4.0 * (n % 2 ? -1.0 : 1.0));
        CHECK(std::abs(gate.diag(n) - ideal) < 1e-12);
    }
}

TEST_CASE("gate rejects mismatched spaces") {
    auto budget = gates::truncation_budget(0.5);
    FockSpace small(10);
    Matrix ref = Matrix::Identity(10, 10) / 10.0;
    CHECK_THROWS_AS((void)gates::truncated_parity_gate(budget, 0.1, small, ref), ConfigError);

    FockSpace ok(40);
    CHECK_THROWS_AS((void)gates::truncated_parity_gate(budget, 0.1, ok, ref), ConfigError);
}
