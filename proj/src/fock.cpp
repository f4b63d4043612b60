#include "qsplab/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

namespace qsplab::fock {

Matrix annihilation(const FockSpace& space) {
    Matrix a = Matrix::Zero(space.dim, space.dim);
    for (int n = 0; n + 1 < space.dim; ++n) a(n, n + 1) = std::sqrt(double(n + 1));
    return a;
}

RealVector parity_diag(const FockSpace& space) {
    RealVector d(space.dim);
    for (int n = 0; n < space.dim; ++n) d(n) = (n % 2 == 0) ? 1.0 : -1.0;
    return d;
}

Matrix parity(const FockSpace& space) {
    return parity_diag(space).cast<cplx>().asDiagonal();
}

double unitarity_defect(const Matrix& u, int levels) {
    Matrix g = u.adjoint() * u;
    g.diagonal().array() -= 1.0;
    int k = std::min<int>(levels, g.rows());
    return g.topLeftCorner(k, k).cwiseAbs().maxCoeff();
}

Matrix displacement(cplx alpha, const FockSpace& space) {
    double abs_a = std::abs(alpha);
    if (abs_a * abs_a + 3.0 * abs_a + 3.0 > double(space.dim))
        throw NumericsError("displacement: cutoff too small for |alpha|=" + std::to_string(abs_a));
    Matrix a = annihilation(space);
    Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
    Matrix u = gen.exp();
    int half = (space.dim + 1) / 2;
    if (unitarity_defect(u, half) > 1e-6)
        throw NumericsError("displacement: unitarity defect above 1e-6 on lower half block");
    return u;
}

namespace {
constexpr double kPiQuarterInv = 0.7511255444649425;  // pi^{-1/4}

// psi_0..psi_{nmax-1} at one abscissa into out[]; returns false on underflow.
bool hermite_column(int nmax, double x, double* out) {
    double e = std::exp(-0.5 * x * x);
    if (e == 0.0) {
        for (int n = 0; n < nmax; ++n) out[n] = 0.0;
        return false;
    }
    double prev = kPiQuarterInv * e;
    out[0] = prev;
    if (nmax == 1) return true;
    double cur = std::numbers::sqrt2 * x * prev;
    out[1] = cur;
    for (int n = 1; n + 1 < nmax; ++n) {
        double next = std::sqrt(2.0 / (n + 1)) * x * cur - std::sqrt(double(n) / (n + 1)) * prev;
        prev = cur;
        cur = next;
        out[n + 1] = cur;
    }
    return true;
}
}  // namespace

double hermite_psi(int n, double x, bool* underflow) {
    std::vector<double> col(n + 1);
    bool ok = hermite_column(n + 1, x, col.data());
    if (underflow) *underflow = !ok;
    return col[n];
}

RealMatrix hermite_table(int nmax, const RealVector& xs) {
    RealMatrix t(nmax, xs.size());
    std::vector<double> col(nmax);
    for (Eigen::Index j = 0; j < xs.size(); ++j) {
        hermite_column(nmax, xs(j), col.data());
        for (int n = 0; n < nmax; ++n) t(n, j) = col[n];
    }
    return t;
}

QuadratureRule gauss_legendre(int n) {
    QuadratureRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x(i) = x;
        rule.w(i) = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

QuadratureRule composite_rule(double a, double b, int panels, int nodes_per_panel) {
    QuadratureRule base = gauss_legendre(nodes_per_panel);
    QuadratureRule rule;
    rule.x.resize(panels * nodes_per_panel);
    rule.w.resize(panels * nodes_per_panel);
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h;
        for (int i = 0; i < nodes_per_panel; ++i) {
            rule.x(p * nodes_per_panel + i) = mid + 0.5 * h * base.x(i);
            rule.w(p * nodes_per_panel + i) = 0.5 * h * base.w(i);
        }
    }
    return rule;
}

double sign_q_xmax(int dim) { return std::sqrt(2.0 * dim) + 6.0; }

namespace {
// S = 2 * Psi diag(w) Psi^T over [0, xmax] with the given panel count.
RealMatrix sign_q_panels(int dim, int panels) {
    QuadratureRule rule = composite_rule(0.0, sign_q_xmax(dim), panels);
    RealMatrix psi = hermite_table(dim, rule.x);
    RealMatrix s = 2.0 * psi * rule.w.asDiagonal() * psi.transpose();
    return s;
}

int sign_q_panel_count(int dim) {
    return std::max(8, int(std::ceil((8.0 * dim + 200.0) / 32.0)));
}
}  // namespace

RealMatrix sign_q(const FockSpace& space) {
    int panels = sign_q_panel_count(space.dim);
    RealMatrix coarse = sign_q_panels(space.dim, panels);
    RealMatrix fine = sign_q_panels(space.dim, 2 * panels);
    double disagreement = (coarse - fine).cwiseAbs().maxCoeff();
    if (disagreement > 1e-10)
        throw NumericsError("sign_q: quadrature non-convergence, refinement delta " +
                            std::to_string(disagreement));
    // Exact sparsity: the integrand is odd under x -> -x for even m+n.
    for (int m = 0; m < space.dim; ++m)
        for (int n = 0; n < space.dim; ++n)
            if ((m + n) % 2 == 0) fine(m, n) = 0.0;
    // Symmetrize away rounding asymmetry.
    fine = 0.5 * (fine + fine.transpose()).eval();
    return fine;
}

RealMatrix sign_q_square(const FockSpace& space) {
    int panels = sign_q_panel_count(space.dim);
    double xmax = sign_q_xmax(space.dim);
    QuadratureRule rule = composite_rule(-xmax, xmax, 2 * panels);
    RealMatrix psi = hermite_table(space.dim, rule.x);
    return psi * rule.w.asDiagonal() * psi.transpose();
}

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix partial_trace(const Matrix& rho, int d1, int d2, int keep) {
    if (rho.rows() != Eigen::Index(d1) * d2 || rho.cols() != rho.rows())
        throw ConfigError("partial_trace: dimension mismatch");
    if (keep == 0) {
        Matrix out = Matrix::Zero(d1, d1);
        for (int m = 0; m < d1; ++m)
            for (int n = 0; n < d1; ++n)
                for (int k = 0; k < d2; ++k) out(m, n) += rho(m * d2 + k, n * d2 + k);
        return out;
    }
    if (keep == 1) {
        Matrix out = Matrix::Zero(d2, d2);
        for (int k = 0; k < d1; ++k) out += rho.block(k * d2, k * d2, d2, d2);
        return out;
    }
    throw ConfigError("partial_trace: keep must be 0 or 1");
}

cplx expectation(const Matrix& op, const Matrix& rho) {
    if (op.rows() != rho.rows()) throw ConfigError("expectation: dimension mismatch");
    return (op.transpose().cwiseProduct(rho)).sum();
}

Vector apply(const Matrix& op, const Vector& v) {
    if (op.cols() != v.size()) throw ConfigError("apply: dimension mismatch");
    return op * v;
}

QGrid default_qgrid(int dim, int points) {
    double xmax = sign_q_xmax(dim);
    return {-xmax, xmax, points};
}

RealVector qgrid_points(const QGrid& grid) {
    RealVector xs(grid.n);
    double h = (grid.xmax - grid.xmin) / (grid.n - 1);
    for (int i = 0; i < grid.n; ++i) xs(i) = grid.xmin + h * i;
    return xs;
}

namespace {
void check_grid_mass(const RealVector& density, const QGrid& grid) {
    double h = (grid.xmax - grid.xmin) / (grid.n - 1);
    double total = 0.0;
    for (int i = 0; i < grid.n; ++i)
        total += density(i) * ((i == 0 || i == grid.n - 1) ? 0.5 : 1.0) * h;
    if (std::abs(1.0 - total) > 1e-6)
        throw NumericsError("q_marginal: mass outside grid " + std::to_string(1.0 - total));
}
}  // namespace

RealVector q_marginal(const Matrix& rho, const QGrid& grid) {
    RealVector xs = qgrid_points(grid);
    RealMatrix psi = hermite_table(int(rho.rows()), xs);
    Matrix tmp = rho * psi.cast<cplx>();
    RealVector out(grid.n);
    for (int i = 0; i < grid.n; ++i)
        out(i) = std::real(psi.col(i).cast<cplx>().dot(tmp.col(i)));
    check_grid_mass(out, grid);
    return out;
}

RealVector q_marginal_vec(const Vector& psi_vec, const QGrid& grid) {
    RealVector xs = qgrid_points(grid);
    RealMatrix psi = hermite_table(int(psi_vec.size()), xs);
    RealVector out(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        cplx amp = psi.col(i).cast<cplx>().dot(psi_vec);
        out(i) = std::norm(amp);
    }
    check_grid_mass(out, grid);
    return out;
}

}  // namespace qsplab::fock
