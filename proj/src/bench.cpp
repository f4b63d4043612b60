#include "qsplab/bench.hpp"

#include <cmath>
#include <numbers>

#include "qsplab/states.hpp"

namespace qsplab::bench {

double cat_norm(int which, double alpha) {
    double e = std::exp(-2.0 * alpha * alpha);
    return std::sqrt(2.0 * (which == 0 ? 1.0 + e : 1.0 - e));
}

Vector cat_basis(int which, const CatParams& p) {
    if (which != 0 && which != 1) throw ConfigError("cat_basis: which must be 0 or 1");
    if (!(p.alpha > 0.0)) throw ConfigError("cat_basis: alpha must be positive");
    fock::FockSpace space(p.dim);
    Vector plus = states::coherent_vector(p.alpha, space);
    Vector minus = states::coherent_vector(-p.alpha, space);
    Vector v = which == 0 ? Vector(plus + minus) : Vector(plus - minus);
    double n = v.norm();
    if (n < 1e-12) throw NumericsError("cat_basis: vanishing norm (cutoff too small)");
    return v / n;
}

Vector cat_qubit(double theta, double phi, const CatParams& p) {
    if (theta < 0.0 || theta > std::numbers::pi + 1e-12)
        throw ConfigError("cat_qubit: theta outside [0, pi]");
    Vector v = std::cos(theta / 2.0) * cat_basis(0, p) +
               std::polar(1.0, phi) * std::sin(theta / 2.0) * cat_basis(1, p);
    return v;
}

Code code_from_string(const std::string& name) {
    if (name == "cs" || name == "cat") return Code::cs;
    if (name == "qsp") return Code::qsp;
    throw ConfigError("unknown code '" + name + "' (expected cs or qsp)");
}

CatBench::CatBench(const CatParams& p)
    : p_(p), cat0_(cat_basis(0, p)), cat1_(cat_basis(1, p)),
      apos_(encoding::apo_set(fock::FockSpace(p.dim))) {
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
            base_[k][l] = basis(k) * basis(l).adjoint();
}

CatBench::Tables CatBench::tables_at(double kappa_t) const {
    Tables t;
    const Matrix* ops[4] = {&apos_.I, &apos_.X, &apos_.Y, &apos_.Z};
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            Matrix b = states::dephase(base_[k][l], kappa_t);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) t.tt[k][l](i, j) = basis(i).dot(b * basis(j));
            for (int o = 0; o < 4; ++o) t.apo[o](k, l) = (ops[o]->transpose().cwiseProduct(b)).sum();
        }
    return t;
}

namespace {

std::array<cplx, 2> bloch_amplitudes(double theta, double phi) {
    return {cplx(std::cos(theta / 2.0), 0.0), std::polar(1.0, phi) * std::sin(theta / 2.0)};
}

}  // namespace

double CatBench::fidelity_cs_from(const Tables& t, double theta, double phi) const {
    auto u = bloch_amplitudes(theta, phi);
    cplx acc = 0.0;
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            cplx inner = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) inner += std::conj(u[i]) * u[j] * t.tt[k][l](i, j);
            acc += u[k] * std::conj(u[l]) * inner;
        }
    return acc.real();
}

double CatBench::fidelity_qsp_from(const Tables& t, const Tables& t0, double theta,
                                   double phi) const {
    auto u = bloch_amplitudes(theta, phi);
    double num = 0.0, den = 0.0;
    for (int o = 0; o < 4; ++o) {
        cplx bt = 0.0, b0 = 0.0;
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                bt += u[k] * std::conj(u[l]) * t.apo[o](k, l);
                b0 += u[k] * std::conj(u[l]) * t0.apo[o](k, l);
            }
        num += bt.real() * b0.real();
        den += b0.real() * b0.real();
    }
    if (den <= 0.0) throw NumericsError("fidelity_qsp: degenerate reference state");
    return num / den;
}

double CatBench::fidelity_cs(double theta, double phi, double kappa_t) const {
    return fidelity_cs_from(tables_at(kappa_t), theta, phi);
}

double CatBench::fidelity_qsp(double theta, double phi, double kappa_t) const {
    return fidelity_qsp_from(tables_at(kappa_t), tables_at(0.0), theta, phi);
}

SphereAverage CatBench::average_with(Code code, double kappa_t, int n_theta, int n_phi) const {
    Tables t = tables_at(kappa_t);
    Tables t0 = tables_at(0.0);
    fock::QuadratureRule gl = fock::gauss_legendre(n_theta);  // over cos(theta) in [-1, 1]
    double acc = 0.0;
    for (int i = 0; i < n_theta; ++i) {
        double theta = std::acos(gl.x(i));
        double row = 0.0;
        for (int j = 0; j < n_phi; ++j) {
            double phi = 2.0 * std::numbers::pi * j / n_phi;
            row += (code == Code::cs) ? fidelity_cs_from(t, theta, phi)
                                      : fidelity_qsp_from(t, t0, theta, phi);
        }
        acc += gl.w(i) * row;
    }
    SphereAverage out;
    out.value = acc / (2.0 * n_phi);
    return out;
}

SphereAverage CatBench::avg_fidelity(Code code, double kappa_t, const QuadConfig& quad) const {
    if (quad.theta_nodes < 2 || quad.phi_nodes < 2)
        throw ConfigError("avg_fidelity: need at least 2 nodes per direction");
    SphereAverage coarse = average_with(code, kappa_t, quad.theta_nodes, quad.phi_nodes);
    SphereAverage fine = average_with(code, kappa_t, 2 * quad.theta_nodes, 2 * quad.phi_nodes);
    fine.quad_error = std::abs(fine.value - coarse.value);
    if (fine.quad_error > 1e-4)
        throw NumericsError("avg_fidelity: sphere quadrature did not converge");
    return fine;
}

FidelityCurve CatBench::curve(Code code, const std::vector<double>& kts,
                              const QuadConfig& quad) const {
    FidelityCurve out;
    out.code = code == Code::cs ? "cs" : "qsp";
    for (double kt : kts) {
        SphereAverage avg = avg_fidelity(code, kt, quad);
        out.kappa_t.push_back(kt);
        out.value.push_back(avg.value);
        out.quad_error = std::max(out.quad_error, avg.quad_error);
    }
    return out;
}

double CatBench::threshold(Code code, double drop_level) const {
    if (!(drop_level > 0.0 && drop_level < 1.0))
        throw ConfigError("threshold: drop_level must lie in (0, 1)");
    auto x_plus = [&](double kt) {  // <X_E> of the dephased |+_cs>
        Tables t = tables_at(kt);
        auto u = bloch_amplitudes(std::numbers::pi / 2.0, 0.0);
        cplx xt = 0.0;
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) xt += u[k] * std::conj(u[l]) * t.apo[1](k, l);
        return xt.real();
    };
    double x0 = code == Code::qsp ? x_plus(0.0) : 1.0;
    if (std::abs(x0) < 1e-9) throw NumericsError("threshold: vanishing initial <X_E>");
    auto figure = [&](double kt) {
        return code == Code::qsp ? x_plus(kt) / x0
                                 : fidelity_cs(std::numbers::pi / 2.0, 0.0, kt);
    };
    double lo = 0.0, hi = 8.0;
    double f_hi = figure(hi);
    while (f_hi > drop_level && hi < 64.0) {
        hi *= 2.0;
        f_hi = figure(hi);
    }
    if (f_hi > drop_level) throw NumericsError("threshold: figure never crosses drop level");
    for (int it = 0; it < 200 && hi - lo > 1e-4; ++it) {
        double mid = 0.5 * (lo + hi);
        (figure(mid) > drop_level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double fidelity_cs(double theta, double phi, double kappa_t, const CatParams& p) {
    return CatBench(p).fidelity_cs(theta, phi, kappa_t);
}

double fidelity_qsp(double theta, double phi, double kappa_t, const CatParams& p) {
    return CatBench(p).fidelity_qsp(theta, phi, kappa_t);
}

double avg_fidelity(Code code, double kappa_t, const CatParams& p, const QuadConfig& quad) {
    return CatBench(p).avg_fidelity(code, kappa_t, quad).value;
}

double threshold_scan(Code code, const CatParams& p, double drop_level) {
    return CatBench(p).threshold(code, drop_level);
}

}  // namespace qsplab::bench
