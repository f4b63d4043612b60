#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsplab/gates.hpp"

namespace qsplab::gates {

namespace {

mpfr_prec_t precision_for(int n) {
    double x = std::numbers::pi * n;
    double bits = std::ceil(x * std::numbers::log2e) + 112.0;
    return std::max<mpfr_prec_t>(192, mpfr_prec_t(bits));
}

// Partial sums C = sum_{2j<=k_max} (-1)^j x^{2j}/(2j)! and
// S = sum_{2j+1<=k_max} (-1)^j x^{2j+1}/(2j+1)! at x = pi n.
// These are the real/imaginary parts of sum_{k<=k_max} (i pi n)^k / k!.
void partial_sums(int n, int k_max, mpfr_prec_t prec, double* c_out, double* s_out) {
    mpfr_t x, x2, term, acc_c, acc_s;
    mpfr_inits2(prec, x, x2, term, acc_c, acc_s, mpfr_ptr(nullptr));
    mpfr_const_pi(x, MPFR_RNDN);
    mpfr_mul_si(x, x, n, MPFR_RNDN);
    mpfr_sqr(x2, x, MPFR_RNDN);

    mpfr_set_si(term, 1, MPFR_RNDN);
    mpfr_set_si(acc_c, 0, MPFR_RNDN);
    for (long j = 0; 2 * j <= k_max; ++j) {
        mpfr_add(acc_c, acc_c, term, MPFR_RNDN);
        mpfr_mul(term, term, x2, MPFR_RNDN);
        mpfr_div_si(term, term, 2 * j + 1, MPFR_RNDN);
        mpfr_div_si(term, term, 2 * j + 2, MPFR_RNDN);
        mpfr_neg(term, term, MPFR_RNDN);
    }

    mpfr_set(term, x, MPFR_RNDN);
    mpfr_set_si(acc_s, 0, MPFR_RNDN);
    for (long j = 0; 2 * j + 1 <= k_max; ++j) {
        mpfr_add(acc_s, acc_s, term, MPFR_RNDN);
        mpfr_mul(term, term, x2, MPFR_RNDN);
        mpfr_div_si(term, term, 2 * j + 2, MPFR_RNDN);
        mpfr_div_si(term, term, 2 * j + 3, MPFR_RNDN);
        mpfr_neg(term, term, MPFR_RNDN);
    }

    *c_out = mpfr_get_d(acc_c, MPFR_RNDN);
    *s_out = mpfr_get_d(acc_s, MPFR_RNDN);
    mpfr_clears(x, x2, term, acc_c, acc_s, mpfr_ptr(nullptr));
}

// Residual-checked sums: recompute with 64 extra bits and require agreement,
// catching any uncontrolled cancellation.
cplx checked_partial_sum(int n, int k_max) {
    mpfr_prec_t prec = precision_for(n);
    if (prec > (mpfr_prec_t(1) << 22))
        throw NumericsError("truncated_parity_gate: required precision out of range");
    double c1, s1, c2, s2;
    partial_sums(n, k_max, prec, &c1, &s1);
    partial_sums(n, k_max, prec + 64, &c2, &s2);
    if (std::abs(c1 - c2) + std::abs(s1 - s2) > 1e-25 * std::max(1.0, std::abs(c2) + std::abs(s2)))
        throw NumericsError("truncated_parity_gate: precision insufficient at level " +
                            std::to_string(n));
    return {c2, s2};
}

}  // namespace

cplx parity_partial_sum(int n, int k_max) { return checked_partial_sum(n, k_max); }

TruncatedParityGate truncated_parity_gate(const TruncationBudget& budget, double theta,
                                          const fock::FockSpace& space,
                                          const Matrix& reference_state) {
    if (space.dim < budget.r_max)
        throw ConfigError("truncated_parity_gate: space cutoff below r_max");
    if (reference_state.rows() != space.dim)
        throw ConfigError("truncated_parity_gate: reference state dimension mismatch");

    TruncatedParityGate out;
    out.diag.resize(space.dim);
    out.report.levels.reserve(space.dim);
    out.report.precision_bits = int(precision_for(space.dim - 1));

    for (int n = 0; n < space.dim; ++n) {
        cplx p = checked_partial_sum(n, budget.k_max);
        double ideal_sign = (n % 2 == 0) ? 1.0 : -1.0;
        double defect = std::hypot(p.real() - ideal_sign, p.imag());
        // exp(i theta (C + iS)) = e^{-theta S} e^{i theta C}; the magnitude is
        // saturated once the series has lost validity (levels beyond r_max).
        double log_mag = std::clamp(-theta * p.imag(), -700.0, 700.0);
        cplx entry = std::polar(std::exp(log_mag), theta * p.real());
        cplx ideal = std::polar(1.0, theta * ideal_sign);
        double gate_error = 2.0;
        if (std::abs(entry) < 1e3) gate_error = std::min(std::abs(entry - ideal), 2.0);
        double pop = std::real(reference_state(n, n));
        out.diag(n) = entry;
        out.report.levels.push_back({n, defect, pop, gate_error});
        out.report.weighted_gate_error += pop * gate_error;
        if (n <= budget.r_max) out.report.max_defect = std::max(out.report.max_defect, defect);
    }
    return out;
}

}  // namespace qsplab::gates
