#pragma once

#include <map>
#include <string>
#include <vector>

#include "qsplab/encoding.hpp"
#include "qsplab/measurement.hpp"
#include "qsplab/multimode.hpp"
#include "qsplab/states.hpp"

namespace qsplab::mbqc {

using fock::cplx;
using fock::Matrix;
using fock::Vector;

// One adaptive measurement: theta_eff = (-1)^{xor of s_domain outcomes} theta
//                                       + pi * (xor of t_domain outcomes).
struct ScheduleStep {
    int vertex = 0;
    double theta = 0.0;
    std::vector<int> s_domain;
    std::vector<int> t_domain;
};

struct GraphPattern {
    std::vector<int> vertices;      // ids, in mode order
    std::vector<std::string> roles; // aligned with vertices
    std::vector<std::pair<int, int>> edges;
    std::vector<ScheduleStep> schedule;
    std::vector<int> outputs;

    int mode_of(int vertex_id) const;
    std::vector<int> neighbors(int vertex_id) const;
    // Throws ConfigError on duplicate ids, unknown references, self-loops,
    // duplicate edges, re-measured or unmeasured non-output vertices, or
    // adaptation domains referencing vertices not measured strictly earlier.
    void validate() const;

    static GraphPattern from_json(const std::string& text);
    static GraphPattern load_file(const std::string& path);
    std::string to_json() const;
};

// Linear chain 0-1-...-(n-1); vertices 0..n-2 measured in order at the given
// angles with the standard wire adaptation (sign flip from the previous
// vertex, pi shift from the one before that); last vertex is the output.
GraphPattern wire_pattern(const std::vector<double>& thetas);
// n vertices, given edges, no measurements: plain graph-state preparation.
GraphPattern cluster_state_pattern(int n, const std::vector<std::pair<int, int>>& edges);

// Accumulated Pauli corrections on output vertices (bits, XOR group law).
struct ByproductFrame {
    std::map<int, int> x_power;
    std::map<int, int> z_power;
    void flip_x(int vertex) { x_power[vertex] ^= 1; }
    void flip_z(int vertex) { z_power[vertex] ^= 1; }
};

enum class Backend { dense, trajectory };
Backend backend_from_string(const std::string& name);

struct RunOptions {
    Backend backend = Backend::trajectory;
    long trajectories = 10000;
    int cutoff = 0;                 // 0 -> backend default
    bool post_select_plus = false;  // dense only: force every outcome to +
    bool apply_frame = true;        // fold byproducts into the reported state
    double kappa_t = 0.0;           // dephasing applied after entangling
};

struct RunResult {
    encoding::LogicalState output;
    std::vector<double> outcome_plus_frequency;  // per schedule step
    double post_select_weight = 1.0;             // dense branch mass
    long trajectories = 0;
    ByproductFrame frame;  // frame of the last executed run (diagnostic)
};

int default_cutoff(Backend backend, const states::ThermalParams& p);

// Graph-state preparation: every vertex a displaced-thermal |+_L>, CPhase on
// every edge. Dense requires exactly 2 vertices; trajectory caps at 6 modes
// and cutoff 40 (BudgetError beyond).
multimode::TwoModeDensity build_cluster_dense(const GraphPattern& pattern,
                                              const states::ThermalParams& p, int cutoff);
multimode::ProductSumState build_cluster_trajectory(const GraphPattern& pattern,
                                                    const states::ThermalParams& p, int cutoff,
                                                    RandomStream& rng);

// Execute the pattern on the selected backend and tomograph the outputs.
// Byproducts on outputs are derived from the causal flow (the unique
// not-yet-measured neighbor of each measured vertex).
RunResult run_pattern(const GraphPattern& pattern, const states::ThermalParams& p,
                      const RunOptions& opts, RandomStream& rng);

// Exact qubit-level one-way-model reference: all-plus post-selected branch
// (adaptations vanish, byproduct frame trivial). N <= 10.
encoding::LogicalState qubit_oracle(const GraphPattern& pattern, double* branch_weight = nullptr);

// Conjugate X^x Z^z byproducts into a logical state (qubit order = output
// order in the pattern).
encoding::LogicalState apply_frame(const encoding::LogicalState& state,
                                   const GraphPattern& pattern, const ByproductFrame& frame);

}  // namespace qsplab::mbqc
