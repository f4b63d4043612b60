#include "qsplab/mbqc.hpp"

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "qsplab/gates.hpp"

namespace qsplab::mbqc {

using json = nlohmann::json;

int GraphPattern::mode_of(int vertex_id) const {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == vertex_id) return int(i);
    throw ConfigError("pattern: unknown vertex id " + std::to_string(vertex_id));
}

std::vector<int> GraphPattern::neighbors(int vertex_id) const {
    std::vector<int> out;
    for (const auto& [a, b] : edges) {
        if (a == vertex_id) out.push_back(b);
        if (b == vertex_id) out.push_back(a);
    }
    return out;
}

void GraphPattern::validate() const {
    std::set<int> ids(vertices.begin(), vertices.end());
    if (ids.size() != vertices.size()) throw ConfigError("pattern: duplicate vertex ids");
    if (!roles.empty() && roles.size() != vertices.size())
        throw ConfigError("pattern: roles/vertices length mismatch");
    std::set<std::pair<int, int>> seen;
    for (const auto& [a, b] : edges) {
        if (a == b) throw ConfigError("pattern: self-loop edge");
        if (!ids.count(a) || !ids.count(b)) throw ConfigError("pattern: edge references unknown vertex");
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) throw ConfigError("pattern: duplicate edge");
    }
    std::set<int> outs(outputs.begin(), outputs.end());
    for (int o : outputs)
        if (!ids.count(o)) throw ConfigError("pattern: output references unknown vertex");
    std::set<int> measured;
    for (const auto& step : schedule) {
        if (!ids.count(step.vertex)) throw ConfigError("pattern: schedule references unknown vertex");
        if (outs.count(step.vertex)) throw ConfigError("pattern: output vertex in schedule");
        if (!measured.insert(step.vertex).second)
            throw ConfigError("pattern: vertex measured twice");
        for (int d : step.s_domain)
            if (!measured.count(d) || d == step.vertex)
                throw ConfigError("pattern: s_domain must reference earlier measurements");
        for (int d : step.t_domain)
            if (!measured.count(d) || d == step.vertex)
                throw ConfigError("pattern: t_domain must reference earlier measurements");
    }
    for (int v : vertices)
        if (!outs.count(v) && !measured.count(v))
            throw ConfigError("pattern: vertex " + std::to_string(v) +
                              " neither measured nor declared output");
}

GraphPattern GraphPattern::from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("pattern: invalid JSON: ") + e.what());
    }
    GraphPattern p;
    try {
        for (const auto& v : j.at("vertices")) {
            p.vertices.push_back(v.at("id").get<int>());
            p.roles.push_back(v.value("role", "body"));
        }
        for (const auto& e : j.at("edges"))
            p.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        if (j.contains("schedule"))
            for (const auto& s : j.at("schedule")) {
                ScheduleStep step;
                step.vertex = s.at("vertex").get<int>();
                step.theta = s.at("theta").get<double>();
                if (s.contains("adapt")) {
                    const auto& a = s.at("adapt");
                    if (a.contains("s_domain"))
                        step.s_domain = a.at("s_domain").get<std::vector<int>>();
                    if (a.contains("t_domain"))
                        step.t_domain = a.at("t_domain").get<std::vector<int>>();
                }
                p.schedule.push_back(std::move(step));
            }
        if (j.contains("outputs")) p.outputs = j.at("outputs").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("pattern: schema error: ") + e.what());
    }
    p.validate();
    return p;
}

GraphPattern GraphPattern::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("pattern: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::string GraphPattern::to_json() const {
    json j;
    j["vertices"] = json::array();
    for (std::size_t i = 0; i < vertices.size(); ++i)
        j["vertices"].push_back(
            {{"id", vertices[i]}, {"role", i < roles.size() ? roles[i] : "body"}});
    j["edges"] = json::array();
    for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
    j["schedule"] = json::array();
    for (const auto& s : schedule)
        j["schedule"].push_back({{"vertex", s.vertex},
                                 {"theta", s.theta},
                                 {"adapt", {{"s_domain", s.s_domain}, {"t_domain", s.t_domain}}}});
    j["outputs"] = outputs;
    return j.dump(2);
}

GraphPattern wire_pattern(const std::vector<double>& thetas) {
    int n = int(thetas.size()) + 1;
    if (n < 2) throw ConfigError("wire_pattern: need at least one measurement angle");
    GraphPattern p;
    for (int i = 0; i < n; ++i) {
        p.vertices.push_back(i);
        p.roles.push_back(i == 0 ? "input" : (i == n - 1 ? "output" : "body"));
    }
    for (int i = 0; i + 1 < n; ++i) p.edges.emplace_back(i, i + 1);
    for (int i = 0; i + 1 < n; ++i) {
        ScheduleStep step;
        step.vertex = i;
        step.theta = thetas[i];
        if (i >= 1) step.s_domain = {i - 1};
        if (i >= 2) step.t_domain = {i - 2};
        p.schedule.push_back(std::move(step));
    }
    p.outputs = {n - 1};
    p.validate();
    return p;
}

GraphPattern cluster_state_pattern(int n, const std::vector<std::pair<int, int>>& edges) {
    GraphPattern p;
    for (int i = 0; i < n; ++i) {
        p.vertices.push_back(i);
        p.roles.push_back("output");
    }
    p.edges = edges;
    for (int i = 0; i < n; ++i) p.outputs.push_back(i);
    p.validate();
    return p;
}

Backend backend_from_string(const std::string& name) {
    if (name == "dense") return Backend::dense;
    if (name == "trajectory") return Backend::trajectory;
    throw ConfigError("unknown backend '" + name + "' (expected dense or trajectory)");
}

int default_cutoff(Backend backend, const states::ThermalParams& p) {
    if (backend == Backend::dense) return states::policy_cutoff(p);
    return 40;
}

multimode::TwoModeDensity build_cluster_dense(const GraphPattern& pattern,
                                              const states::ThermalParams& p, int cutoff) {
    pattern.validate();
    if (pattern.vertices.size() > 2) throw BudgetError("dense backend caps at 2 modes");
    if (pattern.vertices.size() != 2)
        throw ConfigError("dense backend needs exactly 2 vertices");
    if (cutoff > 70) throw BudgetError("dense backend caps the cutoff at 70");
    fock::FockSpace space(cutoff);
    Matrix rho = states::displaced_thermal(p, space);
    multimode::TwoModeDensity state(rho, rho);
    for (std::size_t i = 0; i < pattern.edges.size(); ++i)
        state.apply_diag(gates::cphase_diag(cutoff, cutoff));
    return state;
}

multimode::ProductSumState build_cluster_trajectory(const GraphPattern& pattern,
                                                    const states::ThermalParams& p, int cutoff,
                                                    RandomStream& rng) {
    pattern.validate();
    int m = int(pattern.vertices.size());
    if (m > 6) throw BudgetError("trajectory backend caps at 6 modes");
    if (cutoff > 40) throw BudgetError("trajectory backend caps the cutoff at 40");
    fock::FockSpace space(cutoff);
    std::vector<Vector> bases = states::sample_coherent_ensemble(p, rng, m, space);
    multimode::ProductSumState state(std::move(bases));
    for (const auto& [a, b] : pattern.edges)
        state.apply_cphase(pattern.mode_of(a), pattern.mode_of(b));
    return state;
}

namespace {

double adapted_theta(const ScheduleStep& step, const std::map<int, int>& outcomes) {
    int s = 0, t = 0;
    for (int d : step.s_domain) s ^= outcomes.at(d);
    for (int d : step.t_domain) t ^= outcomes.at(d);
    return (s ? -step.theta : step.theta) + (t ? std::numbers::pi : 0.0);
}

// Causal-flow successor: the unique later-measured-or-output neighbor.
// Returns -1 when no unique successor exists.
int flow_successor(const GraphPattern& pattern, int vertex, std::size_t step_index) {
    std::set<int> later(pattern.outputs.begin(), pattern.outputs.end());
    for (std::size_t k = step_index + 1; k < pattern.schedule.size(); ++k)
        later.insert(pattern.schedule[k].vertex);
    int found = -1;
    for (int w : pattern.neighbors(vertex)) {
        if (!later.count(w)) continue;
        if (found != -1) return -1;
        found = w;
    }
    return found;
}

void fold_byproducts(const GraphPattern& pattern, int vertex, std::size_t step_index, int outcome,
                     ByproductFrame& frame) {
    if (outcome == 0) return;
    int succ = flow_successor(pattern, vertex, step_index);
    if (succ < 0)
        throw ConfigError("pattern: byproduct tracking needs a causal flow (unique successor)");
    std::set<int> outs(pattern.outputs.begin(), pattern.outputs.end());
    if (outs.count(succ)) frame.flip_x(succ);
    for (int w : pattern.neighbors(succ))
        if (w != vertex && outs.count(w)) frame.flip_z(w);
    // Corrections on later-measured vertices are carried by the pattern's own
    // s/t domains, not by the frame.
}

encoding::LogicalState tomograph_product_state(const multimode::ProductSumState& state,
                                               const encoding::ApoSet& apos,
                                               const std::vector<int>& digit_of_mode) {
    int n = int(digit_of_mode.size());
    const Matrix* paulis[4] = {nullptr, &apos.X, &apos.Y, &apos.Z};
    std::size_t count = 1;
    for (int k = 0; k < n; ++k) count *= 4;
    std::vector<cplx> e(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        std::vector<const Matrix*> ops(n, nullptr);
        for (int mode = 0; mode < n; ++mode) {
            int digit = int((idx >> (2 * (n - 1 - digit_of_mode[mode]))) % 4);
            ops[mode] = paulis[digit];
        }
        cplx val = state.expectation(ops);
        // Single-trajectory APO strings can carry small imaginary parts from
        // quadrature truncation; tomography keeps the real part.
        e[idx] = cplx(val.real(), 0.0);
    }
    return encoding::logical_from_expectations(n, e);
}

RunResult run_dense(const GraphPattern& pattern, const states::ThermalParams& p,
                    const RunOptions& opts, RandomStream& rng) {
    int cutoff = opts.cutoff > 0 ? opts.cutoff : default_cutoff(Backend::dense, p);
    multimode::TwoModeDensity state = build_cluster_dense(pattern, p, cutoff);
    if (opts.kappa_t > 0.0) state.dephase(opts.kappa_t);
    fock::FockSpace space(cutoff);
    encoding::ApoSet apos = encoding::apo_set(space);
    auto [p_plus, p_minus] = measurement::half_line_projectors(apos);
    Matrix id = Matrix::Identity(cutoff, cutoff);

    RunResult result;
    result.trajectories = 1;
    std::map<int, int> outcomes;
    for (std::size_t si = 0; si < pattern.schedule.size(); ++si) {
        const ScheduleStep& step = pattern.schedule[si];
        double theta = adapted_theta(step, outcomes);
        int mode = pattern.mode_of(step.vertex);
        state.apply_mode_diag(mode, gates::parity_rotation_diag(theta / 2.0, space));
        cplx w = mode == 0 ? state.expect_product(p_plus, id) : state.expect_product(id, p_plus);
        double w_plus = std::clamp(w.real(), 0.0, 1.0);
        int s = opts.post_select_plus ? 0 : (rng.uniform() < w_plus ? 0 : 1);
        state.project_mode(mode, s == 0 ? p_plus : p_minus);
        outcomes[step.vertex] = s;
        result.outcome_plus_frequency.push_back(w_plus);
        fold_byproducts(pattern, step.vertex, si, s, result.frame);
    }
    result.post_select_weight = state.weight();

    if (pattern.outputs.size() == 1) {
        Matrix reduced = state.reduce_to(pattern.mode_of(pattern.outputs[0]));
        result.output = encoding::logical_qubit(reduced, apos);
    } else if (pattern.outputs.size() == 2) {
        result.output = encoding::logical_state_2mode(state.rho(), apos);
    } else {
        throw ConfigError("dense run: outputs must cover 1 or 2 modes");
    }
    if (opts.apply_frame) result.output = apply_frame(result.output, pattern, result.frame);
    return result;
}

RunResult run_trajectory(const GraphPattern& pattern, const states::ThermalParams& p,
                         const RunOptions& opts, RandomStream& rng) {
    int cutoff = opts.cutoff > 0 ? opts.cutoff : default_cutoff(Backend::trajectory, p);
    if (opts.trajectories < 1) throw ConfigError("trajectory run: need at least 1 trajectory");
    fock::FockSpace space(cutoff);
    encoding::ApoSet apos = encoding::apo_set(space);

    int n_out = int(pattern.outputs.size());
    if (n_out < 1 || n_out > 4) throw ConfigError("trajectory run: outputs must cover 1..4 modes");
    int dim = 1 << n_out;
    Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(dim, dim);
    std::vector<double> plus_counts(pattern.schedule.size(), 0.0);
    RunResult result;

    for (long traj = 0; traj < opts.trajectories; ++traj) {
        RandomStream local = rng.split(std::uint64_t(traj));
        multimode::ProductSumState state = build_cluster_trajectory(pattern, p, cutoff, local);
        if (opts.kappa_t > 0.0)
            for (int k = 0; k < state.modes(); ++k)
                state.dephase_trajectory(k, opts.kappa_t, local);

        std::vector<int> live(pattern.vertices);  // ids, in mode order
        std::map<int, int> outcomes;
        ByproductFrame frame;
        for (std::size_t si = 0; si < pattern.schedule.size(); ++si) {
            const ScheduleStep& step = pattern.schedule[si];
            double theta = adapted_theta(step, outcomes);
            auto it = std::find(live.begin(), live.end(), step.vertex);
            int li = int(it - live.begin());
            measurement::MeasurementRecord rec = state.measure_xy(li, theta, local);
            live.erase(it);
            outcomes[step.vertex] = rec.logical_bit;
            if (rec.logical_bit == 0) plus_counts[si] += 1.0;
            fold_byproducts(pattern, step.vertex, si, rec.logical_bit, frame);
        }

        // live modes (in order) -> digit positions per the declared outputs
        std::vector<int> digit_of_mode(live.size());
        for (std::size_t m = 0; m < live.size(); ++m) {
            auto pos = std::find(pattern.outputs.begin(), pattern.outputs.end(), live[m]);
            if (pos == pattern.outputs.end())
                throw ConfigError("trajectory run: unmeasured vertex is not an output");
            digit_of_mode[m] = int(pos - pattern.outputs.begin());
        }
        encoding::LogicalState ls = tomograph_product_state(state, apos, digit_of_mode);
        if (opts.apply_frame) ls = apply_frame(ls, pattern, frame);
        mean += ls.mat;
        result.frame = frame;
    }

    result.trajectories = opts.trajectories;
    result.output.n_qubits = n_out;
    result.output.mat = mean / double(opts.trajectories);
    result.output.pre_norm_weight = 1.0;
    for (double c : plus_counts)
        result.outcome_plus_frequency.push_back(c / double(opts.trajectories));
    return result;
}

}  // namespace

RunResult run_pattern(const GraphPattern& pattern, const states::ThermalParams& p,
                      const RunOptions& opts, RandomStream& rng) {
    pattern.validate();
    if (opts.backend == Backend::dense) return run_dense(pattern, p, opts, rng);
    return run_trajectory(pattern, p, opts, rng);
}

encoding::LogicalState qubit_oracle(const GraphPattern& pattern, double* branch_weight) {
    pattern.validate();
    int n = int(pattern.vertices.size());
    if (n > 10) throw ConfigError("qubit_oracle: capped at 10 qubits");
    long dim = 1L << n;
    Vector psi = Vector::Constant(dim, cplx(1.0 / std::sqrt(double(dim)), 0.0));
    for (const auto& [a, b] : pattern.edges) {
        int qa = pattern.mode_of(a), qb = pattern.mode_of(b);
        for (long idx = 0; idx < dim; ++idx)
            if (((idx >> (n - 1 - qa)) & 1L) && ((idx >> (n - 1 - qb)) & 1L)) psi(idx) = -psi(idx);
    }

    std::vector<int> live(pattern.vertices);
    double weight = 1.0;
    std::map<int, int> outcomes;
    for (const auto& step : pattern.schedule) {
        double theta = adapted_theta(step, outcomes);  // all-plus: no change
        outcomes[step.vertex] = 0;
        auto it = std::find(live.begin(), live.end(), step.vertex);
        int pos = int(it - live.begin());
        int l = int(live.size());
        long block = 1L << (l - 1 - pos);
        long half = psi.size() / 2;
        Vector next(half);
        cplx phase = std::polar(1.0 / std::sqrt(2.0), -theta);
        for (long h = 0; h < (1L << pos); ++h)
            for (long lo = 0; lo < block; ++lo) {
                long i0 = (h * 2) * block + lo, i1 = (h * 2 + 1) * block + lo;
                next(h * block + lo) = psi(i0) / std::sqrt(2.0) + phase * psi(i1);
            }
        double w = next.squaredNorm();
        if (w < 1e-12) throw ConfigError("qubit_oracle: zero-probability all-plus branch");
        weight *= w;
        psi = next / std::sqrt(w);
        live.erase(it);
    }
    if (branch_weight != nullptr) *branch_weight = weight;

    // Reorder the surviving qubits into declared output order.
    int n_out = int(live.size());
    std::vector<int> perm(n_out);  // digit in output order -> current position
    for (int d = 0; d < n_out; ++d) {
        auto it = std::find(live.begin(), live.end(), pattern.outputs[d]);
        if (it == live.end()) throw ConfigError("qubit_oracle: outputs do not match survivors");
        perm[d] = int(it - live.begin());
    }
    long odim = 1L << n_out;
    Vector ordered(odim);
    for (long idx = 0; idx < odim; ++idx) {
        long src = 0;
        for (int d = 0; d < n_out; ++d)
            if ((idx >> (n_out - 1 - d)) & 1L) src |= 1L << (n_out - 1 - perm[d]);
        ordered(idx) = psi(src);
    }

    encoding::LogicalState out;
    out.n_qubits = n_out;
    out.mat = ordered * ordered.adjoint();
    out.pre_norm_weight = weight;
    return out;
}

encoding::LogicalState apply_frame(const encoding::LogicalState& state,
                                   const GraphPattern& pattern, const ByproductFrame& frame) {
    auto paulis = encoding::logical_paulis();
    int n = state.n_qubits;
    if (int(pattern.outputs.size()) != n)
        throw ConfigError("apply_frame: output count does not match state");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Ones(1, 1);
    for (int d = 0; d < n; ++d) {
        int v = pattern.outputs[d];
        Eigen::Matrix2cd g = Eigen::Matrix2cd::Identity();
        auto x = frame.x_power.find(v);
        if (x != frame.x_power.end() && x->second) g = paulis[1] * g;
        auto z = frame.z_power.find(v);
        if (z != frame.z_power.end() && z->second) g = g * paulis[3];
        u = Eigen::kroneckerProduct(u, g).eval();
    }
    encoding::LogicalState out = state;
    out.mat = u * state.mat * u.adjoint();
    return out;
}

}  // namespace qsplab::mbqc
