#pragma once

#include <array>
#include <string>
#include <vector>

#include "qsplab/encoding.hpp"
#include "qsplab/fock.hpp"

namespace qsplab::bench {

using fock::cplx;
using fock::Matrix;
using fock::Vector;

struct CatParams {
    double alpha = 2.0;
    int dim = 60;
};

// N_plus/minus = sqrt(2 (1 +- e^{-2 alpha^2})).
double cat_norm(int which, double alpha);

// |0_cs> = (|a> + |-a>)/N+, |1_cs> = (|a> - |-a>)/N-, unit-normalized on the
// truncated space (exactly orthogonal there by parity).
Vector cat_basis(int which, const CatParams& p);
// cos(theta/2)|0_cs> + e^{i phi} sin(theta/2)|1_cs>.
Vector cat_qubit(double theta, double phi, const CatParams& p);

enum class Code { cs, qsp };
Code code_from_string(const std::string& name);

struct QuadConfig {
    int theta_nodes = 16;  // Gauss-Legendre in cos(theta)
    int phi_nodes = 16;    // trapezoid (periodic) in phi
};

struct SphereAverage {
    double value = 0.0;
    double quad_error = 0.0;  // |doubled-node result - base result|
};

struct FidelityCurve {
    std::string code;
    std::vector<double> kappa_t;
    std::vector<double> value;
    double quad_error = 0.0;  // worst point
};

// Dephasing benchmark engine. The four dephased basis products
// B_kl(t) = dephase(|k_cs><l_cs|) reduce every (theta, phi) evaluation to a
// handful of precontracted scalars, so sphere averages and threshold scans
// cost O(D^2) per kappa_t, not per point.
class CatBench {
  public:
    explicit CatBench(const CatParams& p);

    const CatParams& params() const { return p_; }
    const encoding::ApoSet& apos() const { return apos_; }
    const Vector& basis(int which) const { return which == 0 ? cat0_ : cat1_; }

    double fidelity_cs(double theta, double phi, double kappa_t) const;
    double fidelity_qsp(double theta, double phi, double kappa_t) const;

    SphereAverage avg_fidelity(Code code, double kappa_t, const QuadConfig& quad = {}) const;
    FidelityCurve curve(Code code, const std::vector<double>& kts,
                        const QuadConfig& quad = {}) const;

    // Bisection for the kappa_t where the X-information figure crosses
    // drop_level: <X_E> retention of |+_cs> for qsp, physical |+_cs> fidelity
    // for cs. Tolerance 1e-4 in kappa_t.
    double threshold(Code code, double drop_level = 0.9) const;

  private:
    struct Tables {
        // tt[k][l](i, j) = <i_cs| B_kl |j_cs>
        std::array<std::array<Eigen::Matrix2cd, 2>, 2> tt;
        // apo[o](k, l) = Tr{O_o B_kl}, o in {I, X, Y, Z}
        std::array<Eigen::Matrix2cd, 4> apo;
    };
    Tables tables_at(double kappa_t) const;
    double fidelity_cs_from(const Tables& t, double theta, double phi) const;
    double fidelity_qsp_from(const Tables& t, const Tables& t0, double theta, double phi) const;
    SphereAverage average_with(Code code, double kappa_t, int n_theta, int n_phi) const;

    CatParams p_;
    Vector cat0_, cat1_;
    encoding::ApoSet apos_;
    std::array<std::array<Matrix, 2>, 2> base_;  // |k_cs><l_cs|
};

// Convenience wrappers with the one-shot signatures.
double fidelity_cs(double theta, double phi, double kappa_t, const CatParams& p);
double fidelity_qsp(double theta, double phi, double kappa_t, const CatParams& p);
double avg_fidelity(Code code, double kappa_t, const CatParams& p, const QuadConfig& quad = {});
double threshold_scan(Code code, const CatParams& p, double drop_level = 0.9);

}  // namespace qsplab::bench
