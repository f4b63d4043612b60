#include "qsplab/multimode.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qsplab/gates.hpp"

namespace qsplab::multimode {

namespace {

Vector lift_diag(const Vector& d, int mode, int d1, int d2) {
    Vector full(d1 * d2);
    for (int i1 = 0; i1 < d1; ++i1)
        for (int i2 = 0; i2 < d2; ++i2) full(i1 * d2 + i2) = mode == 0 ? d(i1) : d(i2);
    return full;
}

}  // namespace

TwoModeDensity::TwoModeDensity(const Matrix& rho1, const Matrix& rho2)
    : d1_(int(rho1.rows())), d2_(int(rho2.rows())), rho_(fock::tensor(rho1, rho2)) {}

void TwoModeDensity::apply_mode(int mode, const Matrix& m) {
    int n = d1_ * d2_;
    if (mode == 1) {
        // (I (x) M) rho (I (x) M)^H: block rows, then block columns.
        Matrix tmp(n, n);
        for (int i1 = 0; i1 < d1_; ++i1)
            tmp.middleRows(i1 * d2_, d2_).noalias() = m * rho_.middleRows(i1 * d2_, d2_);
        for (int j1 = 0; j1 < d1_; ++j1)
            rho_.middleCols(j1 * d2_, d2_).noalias() = tmp.middleCols(j1 * d2_, d2_) * m.adjoint();
        return;
    }
    // mode 0: swap modes, apply on the inner slot, swap back.
    auto swapped = [&](const Matrix& r, int da, int db) {
        Matrix out(r.rows(), r.cols());
        for (int a = 0; a < da; ++a)
            for (int b = 0; b < db; ++b)
                for (int c = 0; c < da; ++c)
                    for (int e = 0; e < db; ++e)
                        out(b * da + a, e * da + c) = r(a * db + b, c * db + e);
        return out;
    };
    rho_ = swapped(rho_, d1_, d2_);
    Matrix tmp(n, n);
    for (int i2 = 0; i2 < d2_; ++i2)
        tmp.middleRows(i2 * d1_, d1_).noalias() = m * rho_.middleRows(i2 * d1_, d1_);
    for (int j2 = 0; j2 < d2_; ++j2)
        rho_.middleCols(j2 * d1_, d1_).noalias() = tmp.middleCols(j2 * d1_, d1_) * m.adjoint();
    rho_ = swapped(rho_, d2_, d1_);
}

void TwoModeDensity::apply_diag(const Vector& diag) {
    int n = d1_ * d2_;
    if (diag.size() != n) throw ConfigError("TwoModeDensity: diagonal size mismatch");
    for (int j = 0; j < n; ++j) rho_.col(j) = diag.cwiseProduct(rho_.col(j)) * std::conj(diag(j));
}

void TwoModeDensity::apply_mode_diag(int mode, const Vector& diag) {
    if (diag.size() != (mode == 0 ? d1_ : d2_))
        throw ConfigError("TwoModeDensity: mode diagonal size mismatch");
    apply_diag(lift_diag(diag, mode, d1_, d2_));
}

void TwoModeDensity::dephase(double kappa_t) {
    if (kappa_t < 0.0) throw ConfigError("dephase: kappa_t must be >= 0");
    int dmax = std::max(d1_, d2_);
    std::vector<double> damp(dmax);
    for (int k = 0; k < dmax; ++k) damp[k] = std::exp(-kappa_t * double(k) * double(k) / 2.0);
    int n = d1_ * d2_;
    for (int j = 0; j < n; ++j) {
        int m1 = j / d2_, m2 = j % d2_;
        for (int i = 0; i < n; ++i) {
            int n1 = i / d2_, n2 = i % d2_;
            rho_(i, j) *= damp[std::abs(n1 - m1)] * damp[std::abs(n2 - m2)];
        }
    }
}

cplx TwoModeDensity::expect_product(const Matrix& a, const Matrix& b) const {
    cplx acc = 0.0;
    for (int i1 = 0; i1 < d1_; ++i1)
        for (int j1 = 0; j1 < d1_; ++j1) {
            if (a(i1, j1) == cplx(0.0)) continue;
            acc += a(i1, j1) *
                   (b.transpose().cwiseProduct(rho_.block(j1 * d2_, i1 * d2_, d2_, d2_))).sum();
        }
    return acc;
}

void TwoModeDensity::project_mode(int mode, const Matrix& projector) {
    apply_mode(mode, projector);
    double w = trace();
    if (w < 1e-12) throw ConfigError("TwoModeDensity: zero-probability branch requested");
    rho_ /= w;
    weight_ *= w;
}

Matrix TwoModeDensity::reduce_to(int mode) const {
    return fock::partial_trace(rho_, d1_, d2_, mode);
}

ProductSumState::ProductSumState(std::vector<Vector> bases) : bases_(std::move(bases)) {
    if (bases_.empty() || bases_.size() > 20)
        throw ConfigError("ProductSumState: mode count out of range");
    terms_.push_back({cplx(1.0, 0.0), 0u});
}

void ProductSumState::apply_mode_diag(int mode, const Vector& diag) {
    bases_[mode] = diag.cwiseProduct(bases_[mode]);
}

void ProductSumState::apply_parity_rotation(int mode, double theta) {
    fock::FockSpace space(dim(mode));
    apply_mode_diag(mode, gates::parity_rotation_diag(theta, space));
}

void ProductSumState::apply_joint_parity(int mode_a, int mode_b, double theta) {
    if (mode_a == mode_b) throw ConfigError("joint parity: modes must differ");
    std::uint32_t flip = (1u << mode_a) | (1u << mode_b);
    std::vector<Term> next;
    next.reserve(terms_.size() * 2);
    cplx c = std::cos(theta), is = cplx(0.0, std::sin(theta));
    for (const Term& t : terms_) {
        next.push_back({t.coeff * c, t.pattern});
        next.push_back({t.coeff * is, t.pattern ^ flip});
    }
    terms_ = std::move(next);
    merge_terms();
}

void ProductSumState::apply_cphase(int mode_a, int mode_b) {
    apply_parity_rotation(mode_a, -std::numbers::pi / 4.0);
    apply_parity_rotation(mode_b, -std::numbers::pi / 4.0);
    apply_joint_parity(mode_a, mode_b, std::numbers::pi / 4.0);
}

void ProductSumState::dephase_trajectory(int mode, double kappa_t, RandomStream& rng) {
    if (kappa_t < 0.0) throw ConfigError("dephase_trajectory: kappa_t must be >= 0");
    double phi = rng.normal(0.0, std::sqrt(kappa_t));
    Vector diag(dim(mode));
    for (int n = 0; n < dim(mode); ++n) diag(n) = std::polar(1.0, -phi * n);
    apply_mode_diag(mode, diag);
}

double ProductSumState::parity_overlap(int mode) const {
    const Vector& v = bases_[mode];
    double acc = 0.0;
    for (int n = 0; n < v.size(); ++n) acc += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(v(n));
    return acc;
}

cplx ProductSumState::expectation(const std::vector<const Matrix*>& ops) const {
    int m = modes();
    // Per-mode 2x2 tables T(a, b) = <P^a v | O | P^b v>.
    std::vector<std::array<cplx, 4>> tables(m);
    std::vector<std::array<cplx, 4>> id_tables(m);
    for (int k = 0; k < m; ++k) {
        const Vector& v = bases_[k];
        double n2 = v.squaredNorm(), pb = parity_overlap(k);
        id_tables[k] = {cplx(n2), cplx(pb), cplx(pb), cplx(n2)};
        const Matrix* op = (k < int(ops.size())) ? ops[k] : nullptr;
        if (op == nullptr) {
            tables[k] = id_tables[k];
            continue;
        }
        Vector pv(v.size());
        for (int n = 0; n < v.size(); ++n) pv(n) = (n % 2 == 0) ? v(n) : -v(n);
        Vector ov = (*op) * v, opv = (*op) * pv;
        tables[k] = {v.dot(ov), v.dot(opv), pv.dot(ov), pv.dot(opv)};
    }
    cplx num = 0.0, den = 0.0;
    for (const Term& t : terms_)
        for (const Term& u : terms_) {
            cplx w = t.coeff * std::conj(u.coeff), wid = w;
            for (int k = 0; k < m; ++k) {
                int a = int((u.pattern >> k) & 1u), b = int((t.pattern >> k) & 1u);
                w *= tables[k][2 * a + b];
                wid *= id_tables[k][2 * a + b];
            }
            num += w;
            den += wid;
        }
    if (std::abs(den) < 1e-300) throw NumericsError("ProductSumState: vanishing norm");
    return num / den;
}

double ProductSumState::norm_squared() const {
    int m = modes();
    std::vector<double> n2(m), pb(m);
    for (int k = 0; k < m; ++k) {
        n2[k] = bases_[k].squaredNorm();
        pb[k] = parity_overlap(k);
    }
    cplx acc = 0.0;
    for (const Term& t : terms_)
        for (const Term& u : terms_) {
            cplx w = t.coeff * std::conj(u.coeff);
            for (int k = 0; k < m; ++k)
                w *= (((t.pattern ^ u.pattern) >> k) & 1u) ? pb[k] : n2[k];
            acc += w;
        }
    return acc.real();
}

measurement::MeasurementRecord ProductSumState::measure_homodyne_x(int mode, RandomStream& rng) {
    int d = dim(mode);
    fock::QGrid grid = fock::default_qgrid(d);
    fock::RealVector xs = fock::qgrid_points(grid);
    int npts = int(xs.size());

    // Wave function of the measured mode's base vector on the grid.
    fock::RealMatrix table = fock::hermite_table(d, xs);
    Eigen::VectorXd fr = table.transpose() * bases_[mode].real();
    Eigen::VectorXd fi = table.transpose() * bases_[mode].imag();
    Vector f = fr.cast<cplx>() + cplx(0.0, 1.0) * fi.cast<cplx>();

    // A(a, b) = sum over term pairs with measured-mode bits (a, b), contracting
    // every unmeasured mode.
    std::array<cplx, 4> am{cplx(0.0), cplx(0.0), cplx(0.0), cplx(0.0)};
    int m = modes();
    std::vector<double> n2(m), pb(m);
    for (int k = 0; k < m; ++k) {
        n2[k] = bases_[k].squaredNorm();
        pb[k] = parity_overlap(k);
    }
    for (const Term& t : terms_)
        for (const Term& u : terms_) {
            cplx w = t.coeff * std::conj(u.coeff);
            for (int k = 0; k < m; ++k) {
                if (k == mode) continue;
                w *= (((t.pattern ^ u.pattern) >> k) & 1u) ? pb[k] : n2[k];
            }
            int a = int((t.pattern >> mode) & 1u), b = int((u.pattern >> mode) & 1u);
            am[2 * a + b] += w;
        }

    // P(x) = sum_ab A(a,b) f((-1)^a x) conj(f((-1)^b x)); the mirrored value
    // sits at the reflected grid index.
    fock::RealVector density(npts);
    for (int i = 0; i < npts; ++i) {
        cplx f0 = f(i), f1 = f(npts - 1 - i);
        density(i) = (am[0] * f0 * std::conj(f0) + am[1] * f0 * std::conj(f1) +
                      am[2] * f1 * std::conj(f0) + am[3] * f1 * std::conj(f1))
                         .real();
        density(i) = std::max(density(i), 0.0);
    }

    // Sign-branch masses by trapezoid, splitting the cell that straddles 0.
    double total = 0.0, plus_mass = 0.0;
    for (int i = 1; i < npts; ++i) {
        double cell = 0.5 * (density(i - 1) + density(i)) * (xs(i) - xs(i - 1));
        total += cell;
        if (xs(i - 1) >= 0.0)
            plus_mass += cell;
        else if (xs(i) > 0.0) {
            double frac = xs(i) / (xs(i) - xs(i - 1));  // portion of the cell above 0
            double rho0 = density(i) + (density(i - 1) - density(i)) * frac;
            plus_mass += 0.5 * (rho0 + density(i)) * xs(i);
        }
    }
    if (!(total > 0.0)) throw NumericsError("homodyne: marginal integrates to zero");

    double x_star = measurement::sample_from_density(xs, density, rng);
    int bit = x_star < 0.0 ? 1 : 0;

    // Contract <x*| into the state: the measured mode is consumed. The
    // reflected amplitude uses psi_n(-x) = (-1)^n psi_n(x).
    cplx amp0 = 0.0, amp1 = 0.0;
    for (int n = 0; n < d; ++n) {
        double h = fock::hermite_psi(n, x_star);
        amp0 += bases_[mode](n) * h;
        amp1 += bases_[mode](n) * ((n % 2 == 0) ? h : -h);
    }

    std::uint32_t low_mask = (1u << mode) - 1u;
    std::vector<Term> next;
    next.reserve(terms_.size());
    for (const Term& t : terms_) {
        cplx amp = ((t.pattern >> mode) & 1u) ? amp1 : amp0;
        std::uint32_t pat = (t.pattern & low_mask) | ((t.pattern >> (mode + 1)) << mode);
        next.push_back({t.coeff * amp, pat});
    }
    terms_ = std::move(next);
    bases_.erase(bases_.begin() + mode);
    merge_terms();

    double w = (bases_.empty()) ? [this] {
        cplx s = 0.0;
        for (const Term& t : terms_) s += t.coeff;
        return std::norm(s);
    }()
                                : norm_squared();
    if (w < 1e-300) throw NumericsError("homodyne: collapsed state has vanishing norm");
    double scale = 1.0 / std::sqrt(w);
    for (Term& t : terms_) t.coeff *= scale;

    measurement::MeasurementRecord rec;
    rec.mode = mode;
    rec.basis = "X";
    rec.raw_x = x_star;
    rec.logical_bit = bit;
    rec.weight = bit == 0 ? plus_mass / total : 1.0 - plus_mass / total;
    return rec;
}

measurement::MeasurementRecord ProductSumState::measure_xy(int mode, double theta,
                                                           RandomStream& rng) {
    apply_parity_rotation(mode, theta / 2.0);
    measurement::MeasurementRecord rec = measure_homodyne_x(mode, rng);
    rec.basis = "XY";
    rec.theta = theta;
    return rec;
}

Vector ProductSumState::dense() const {
    int m = modes();
    long total = 1;
    for (int k = 0; k < m; ++k) {
        total *= dim(k);
        if (total > 4'000'000) throw BudgetError("ProductSumState::dense: state too large");
    }
    Vector acc = Vector::Zero(total);
    for (const Term& t : terms_) {
        Vector part = Vector::Constant(1, t.coeff);
        for (int k = 0; k < m; ++k) {
            const Vector& v = bases_[k];
            Vector w(v.size());
            for (int n = 0; n < v.size(); ++n)
                w(n) = (((t.pattern >> k) & 1u) && n % 2 == 1) ? -v(n) : v(n);
            Vector grown(part.size() * w.size());
            for (long i = 0; i < part.size(); ++i)
                grown.segment(i * w.size(), w.size()) = part(i) * w;
            part = std::move(grown);
        }
        acc += part;
    }
    return acc;
}

void ProductSumState::merge_terms() {
    std::map<std::uint32_t, cplx> merged;
    for (const Term& t : terms_) merged[t.pattern] += t.coeff;
    terms_.clear();
    for (const auto& [pat, coeff] : merged)
        if (coeff != cplx(0.0)) terms_.push_back({coeff, pat});
    if (terms_.empty()) terms_.push_back({cplx(0.0), 0u});
}

}  // namespace qsplab::multimode
