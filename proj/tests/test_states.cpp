#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qsplab/encoding.hpp"
#include "qsplab/states.hpp"

using namespace qsplab;
using fock::cplx;
using fock::FockSpace;
using fock::Matrix;
using fock::Vector;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("thermal state moments and purity") {
    FockSpace space(120);
    for (double nb : {0.0, 0.5, 1.0, 2.0}) {
        Matrix rho = states::thermal_state(nb, space);
        CHECK(std::abs(rho.trace() - cplx(1.0)) < 1e-12);
        double mean_n = 0.0, purity = 0.0, parity = 0.0;
        for (int n = 0; n < space.dim; ++n) {
            double p = std::real(rho(n, n));
            mean_n += n * p;
            purity += p * p;
            parity += (n % 2 ? -1.0 : 1.0) * p;
        }
        CHECK(mean_n == doctest::Approx(nb).epsilon(1e-5));
        CHECK(purity == doctest::Approx(1.0 / (2.0 * nb + 1.0)).epsilon(1e-6));
        CHECK(parity == doctest::Approx(1.0 / (2.0 * nb + 1.0)).epsilon(1e-6));
    }
}

TEST_CASE("thermal state rejects an inadequate cutoff") {
    FockSpace space(4);
    CHECK_THROWS_AS((void)states::thermal_state(3.0, space), NumericsError);
}

TEST_CASE("policy cutoff keeps the discarded mass under 1e-6") {
    for (auto [a, nb] : {std::pair{0.5, 2.0}, {1.0, 1.0}, {2.0, 0.5}, {3.0, 0.0}, {0.1, 3.0}}) {
        int cut = states::policy_cutoff(a, nb);
        FockSpace probe(cut + 30);
        Matrix rho = states::displaced_thermal({nb, a}, probe);
        CHECK(states::tail_mass(rho, cut - 1) <= 1e-6);
    }
}

TEST_CASE("displaced thermal diagonal matches the known alpha=0 limit") {
    FockSpace space(60);
    Matrix rho = states::displaced_thermal({1.5, 0.0}, space);
    for (int n = 0; n < 10; ++n)
        CHECK(std::real(rho(n, n)) ==
              doctest::Approx(std::pow(1.5, n) / std::pow(2.5, n + 1)).epsilon(1e-9));
}

TEST_CASE("analytic preparation infidelity agrees with direct sign expectation") {
    for (auto [nb, a] : {std::pair{0.0, 1.0}, {0.5, 1.5}, {1.0, 2.0}}) {
        int cut = states::policy_cutoff(a, nb);
        FockSpace space(cut);
        Matrix rho = states::displaced_thermal({nb, a}, space);
        auto apo = encoding::apo_set(space);
        double x = std::real(fock::expectation(apo.X, rho));
        double infid = 0.5 * (1.0 - x);
        CHECK(infid == doctest::Approx(states::init_infidelity_analytic(nb, a)).epsilon(5e-3));
    }
    CHECK(states::init_infidelity_analytic(0.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("coherent vector is the displaced vacuum column") {
    FockSpace space(40);
    Vector direct = states::coherent_vector(1.2, space);
    Vector column = fock::displacement(1.2, space).col(0);
    CHECK((direct - column).norm() < 1e-9);
    // complex amplitude phases
    Vector rot = states::coherent_vector(cplx(0.0, 1.2), space);
    for (int n = 0; n < 10; ++n)
        CHECK(std::abs(rot(n) - direct(n) * std::polar(1.0, pi / 2.0 * n)) < 1e-12);
}

TEST_CASE("coherent ensemble reproduces the displaced thermal state") {
    states::ThermalParams p{0.5, 1.0};
    int cut = states::policy_cutoff(1.0 + 3.0, 0.0);  // headroom for sampled beta
    FockSpace space(cut);
    RandomStream rng(2024);
    const int n_samples = 4000;
    auto ensemble = states::sample_coherent_ensemble(p, rng, n_samples, space);
    Matrix mean = Matrix::Zero(cut, cut);
    for (const auto& v : ensemble) mean += v * v.adjoint();
    mean /= double(n_samples);
    Matrix exact = states::displaced_thermal(p, space);
    // Frobenius distance shrinks as 1/sqrt(N); 3 sigma of the observed scale
    CHECK((mean - exact).norm() < 0.06);
    for (const auto& v : ensemble) CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("parity projected basis keeps one parity sector") {
    FockSpace space(40);
    for (int bit : {0, 1}) {
        Matrix rho = states::parity_projected_basis({0.5, 2.0}, bit, space);
        CHECK(std::abs(rho.trace() - cplx(1.0)) < 1e-10);
        for (int m = 0; m < space.dim; ++m)
            for (int n = 0; n < space.dim; ++n)
                if (m % 2 != bit || n % 2 != bit) CHECK(rho(m, n) == cplx(0.0));
    }
}

TEST_CASE("dephasing matches an independent Gaussian phase-average oracle") {
    // rho(t) = int dphi N(phi; 0, kt) e^{-i phi n} rho e^{+i phi n}, element-wise
    // this is rho_mn <e^{-i phi (m-n)}> and the characteristic function of a
    // centered Gaussian gives exp(-kt (m-n)^2/2). Check against brute-force
    // quadrature over phi rather than the closed form.
    FockSpace space(24);
    Matrix rho = states::displaced_thermal({0.3, 1.0}, space);
    double kt = 0.37;
    Matrix exact = states::dephase(rho, kt);

    Matrix quad = Matrix::Zero(24, 24);
    const int nphi = 4001;
    double sigma = std::sqrt(kt);
    double lim = 8.0 * sigma, h = 2.0 * lim / (nphi - 1);
    for (int i = 0; i < nphi; ++i) {
        double phi = -lim + h * i;
        double w = std::exp(-phi * phi / (2.0 * kt)) / std::sqrt(2.0 * pi * kt) * h;
        if (i == 0 || i == nphi - 1) w *= 0.5;
        Vector d(24);
        for (int n = 0; n < 24; ++n) d(n) = std::polar(1.0, -phi * n);
        Matrix dm = d.asDiagonal();
        quad += w * (dm * rho * dm.adjoint());
    }
    CHECK((exact - quad).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("dephasing is a semigroup and preserves the diagonal") {
    FockSpace space(30);
    Matrix rho = states::displaced_thermal({0.5, 1.5}, space);
    Matrix two_steps = states::dephase(states::dephase(rho, 0.2), 0.3);
    Matrix one_step = states::dephase(rho, 0.5);
    CHECK((two_steps - one_step).norm() < 1e-12);
    CHECK((states::dephase(rho, 2.0).diagonal() - rho.diagonal()).norm() < 1e-14);
    // positivity after strong dephasing
    Eigen::SelfAdjointEigenSolver<Matrix> es(states::dephase(rho, 2.0));
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("trajectory dephasing averages to the exact channel") {
    FockSpace space(30);
    states::ThermalParams p{0.0, 1.5};
    Vector psi = states::coherent_vector(1.5, space);
    psi /= psi.norm();
    double kt = 0.25;
    RandomStream rng(77);
    Matrix mean = Matrix::Zero(30, 30);
    const int n_traj = 3000;
    for (int i = 0; i < n_traj; ++i) {
        auto local = rng.split(i);
        Vector v = states::dephase_trajectory(psi, kt, local);
        mean += v * v.adjoint();
    }
    mean /= double(n_traj);
    Matrix exact = states::dephase(Matrix(psi * psi.adjoint()), kt);
    CHECK((mean - exact).norm() < 0.06);
    // parity expectation is exactly invariant along every trajectory
    fock::RealVector par = fock::parity_diag(space);
    RandomStream rng2(5);
    Vector v = states::dephase_trajectory(psi, 1.0, rng2);
    double before = 0.0, after = 0.0;
    for (int n = 0; n < 30; ++n) {
        before += par(n) * std::norm(psi(n));
        after += par(n) * std::norm(v(n));
    }
    CHECK(before == doctest::Approx(after).epsilon(1e-12));
}

TEST_CASE("dephasing rejects negative time") {
    FockSpace space(8);
    Matrix rho = states::thermal_state(0.1, space);
    CHECK_THROWS_AS((void)states::dephase(rho, -0.1), ConfigError);
}
