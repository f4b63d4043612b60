#include "qsplab/encoding.hpp"

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace qsplab::encoding {

ApoSet apo_set(const fock::FockSpace& space) {
    ApoSet apo;
    apo.dim = space.dim;
    apo.I = Matrix::Identity(space.dim, space.dim);
    apo.X = fock::sign_q(space).cast<cplx>();
    apo.Z = fock::parity(space);
    apo.Y = cplx(0, 1) * apo.X * apo.Z;
    apo.X_square = fock::sign_q_square(space).cast<cplx>();
    return apo;
}

std::array<Eigen::Matrix2cd, 4> logical_paulis() {
    std::array<Eigen::Matrix2cd, 4> p;
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, cplx(0, -1), cplx(0, 1), 0;
    p[3] << 1, 0, 0, -1;
    return p;
}

namespace {
Diagnostics diagnostics_for(const Matrix& rho, const ApoSet& apo) {
    Diagnostics d;
    d.sign_sq_defect = std::abs(std::real(fock::expectation(apo.X * apo.X, rho)) - 1.0);
    d.involution_defect = std::abs(std::real(fock::expectation(apo.X_square, rho)) - 1.0);
    int from = 3 * apo.dim / 4;
    double tail = 0.0;
    for (int n = from; n < apo.dim; ++n) tail += std::real(rho(n, n));
    d.tail_mass = tail;
    return d;
}
}  // namespace

LogicalState logical_qubit(const Matrix& rho, const ApoSet& apo) {
    if (rho.rows() != apo.dim) throw ConfigError("logical_qubit: dimension mismatch");
    double tr = std::real(rho.trace());
    if (std::abs(tr - 1.0) > 1e-6)
        throw NumericsError("logical_qubit: input trace deviates from 1 by " +
                            std::to_string(tr - 1.0));
    const Matrix* ops[4] = {&apo.I, &apo.X, &apo.Y, &apo.Z};
    auto paulis = logical_paulis();
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    double weight = 0.0;
    for (int q = 0; q < 4; ++q) {
        cplx e = fock::expectation(*ops[q], rho);
        if (std::abs(e.imag()) > 1e-10)
            throw NumericsError("logical_qubit: non-real APO expectation");
        if (q == 0) weight = e.real();
        m += 0.5 * e.real() * paulis[q];
    }
    LogicalState out;
    out.n_qubits = 1;
    out.pre_norm_weight = weight;
    out.mat = m / weight;
    out.diag = diagnostics_for(rho / tr, apo);
    return out;
}

LogicalState logical_state_2mode(const Matrix& rho2, const ApoSet& apo) {
    int d = apo.dim;
    if (rho2.rows() != Eigen::Index(d) * d) throw ConfigError("logical_state_2mode: dimension mismatch");
    const Matrix* ops[4] = {&apo.I, &apo.X, &apo.Y, &apo.Z};
    std::vector<cplx> e(16);
    // Tr{(A (x) B) rho} via blocks: sum_{m1 n1} A(n1,m1) Tr{B R^{m1 n1}}.
    for (int qa = 0; qa < 4; ++qa) {
        for (int qb = 0; qb < 4; ++qb) {
            const Matrix& a = *ops[qa];
            const Matrix& b = *ops[qb];
            cplx total = 0.0;
            for (int m1 = 0; m1 < d; ++m1)
                for (int n1 = 0; n1 < d; ++n1) {
                    if (a(n1, m1) == cplx(0, 0)) continue;
                    cplx tr_b = b.transpose()
                                    .cwiseProduct(rho2.block(m1 * d, n1 * d, d, d))
                                    .sum();
                    total += a(n1, m1) * tr_b;
                }
            e[qa * 4 + qb] = total;
        }
    }
    LogicalState out = logical_from_expectations(2, e);
    Matrix r1 = fock::partial_trace(rho2, d, d, 0);
    out.diag = diagnostics_for(r1 / std::real(r1.trace()), apo);
    return out;
}

LogicalState logical_from_expectations(int n_qubits, const std::vector<cplx>& e) {
    if (n_qubits < 1 || n_qubits > 4)
        throw ConfigError("logical_from_expectations: full tomography capped at 4 qubits");
    std::size_t count = 1;
    for (int k = 0; k < n_qubits; ++k) count *= 4;
    if (e.size() != count) throw ConfigError("logical_from_expectations: need 4^N values");
    auto paulis = logical_paulis();
    int dim = 1 << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t idx = 0; idx < count; ++idx) {
        if (std::abs(e[idx].imag()) > 1e-8)
            throw NumericsError("logical_from_expectations: non-real APO expectation");
        Eigen::MatrixXcd q = Eigen::MatrixXcd::Ones(1, 1);
        for (int k = n_qubits - 1; k >= 0; --k) {
            // idx digits are mode-major: first mode is the most significant.
            std::size_t digit = (idx >> (2 * k)) % 4;
            q = Eigen::kroneckerProduct(q, paulis[digit]).eval();
        }
        m += e[idx].real() * q / double(dim);
    }
    LogicalState out;
    out.n_qubits = n_qubits;
    out.pre_norm_weight = std::real(m.trace());
    if (std::abs(out.pre_norm_weight) < 1e-12)
        throw NumericsError("logical_from_expectations: zero-weight state");
    out.mat = m / out.pre_norm_weight;
    return out;
}

double logical_fidelity(const LogicalState& a, const LogicalState& b) {
    if (a.n_qubits != b.n_qubits) throw ConfigError("logical_fidelity: qubit-count mismatch");
    double f = std::real((a.mat * b.mat).trace());
    if (f < 0.0) f = 0.0;
    if (f > 1.0 + 1e-9) f = 1.0 + 1e-9;
    return f;
}

double trace_distance(const LogicalState& a, const LogicalState& b) {
    if (a.n_qubits != b.n_qubits) throw ConfigError("trace_distance: qubit-count mismatch");
    Eigen::MatrixXcd diff = a.mat - b.mat;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::array<double, 3> bloch(const LogicalState& s) {
    if (s.n_qubits != 1) throw ConfigError("bloch: single-qubit states only");
    auto paulis = logical_paulis();
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k) out[k] = std::real((s.mat * paulis[k + 1]).trace());
    return out;
}

std::string to_json(const LogicalState& s) {
    nlohmann::json j;
    j["n_qubits"] = s.n_qubits;
    j["pre_norm_weight"] = s.pre_norm_weight;
    std::vector<std::vector<std::array<double, 2>>> rows;
    for (Eigen::Index r = 0; r < s.mat.rows(); ++r) {
        std::vector<std::array<double, 2>> row;
        for (Eigen::Index c = 0; c < s.mat.cols(); ++c)
            row.push_back({s.mat(r, c).real(), s.mat(r, c).imag()});
        rows.push_back(std::move(row));
    }
    j["matrix"] = rows;
    j["diagnostics"] = {{"sign_sq_defect", s.diag.sign_sq_defect},
                        {"tail_mass", s.diag.tail_mass},
                        {"involution_defect", s.diag.involution_defect}};
    return j.dump(2);
}

}  // namespace qsplab::encoding
