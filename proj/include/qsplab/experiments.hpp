#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qsplab/errors.hpp"

namespace qsplab::experiments {

inline constexpr const char* kVersion = "qsplab 0.1.0";

struct ExperimentConfig {
    std::string name;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 12345;
    std::string out_dir = ".";
    std::string backend = "trajectory";
    long trajectories = 10000;
};

// Top-level JSON document: {experiment, seed, out_dir, backend, trajectories,
// params:{...}}. Unknown top-level keys are rejected; CLI flags override the
// loaded values afterwards.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Canonical content hash: FNV-1a over the sorted-key dump of everything that
// affects results (out_dir excluded).
std::uint64_t fnv1a(const std::string& bytes);
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Grid grammar: "a,b,c" | "lo..hi" (step 0.5) | "lo..hi:count" |
// "log:lo:hi:count".
std::vector<double> parse_grid(const std::string& text);

struct Csv {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    void add_row(std::vector<std::string> cells);
};

std::string fmt(double v);  // 17 significant digits, '.' decimal
std::string fmt(long v);
std::string fmt(int v);

// Writes '#' metadata lines (version, config hash, seed, timestamp), the
// column header and the rows. Bodies (non-'#' lines) are byte-stable for a
// fixed config and seed.
void write_csv(const std::string& path, const Csv& csv, const ExperimentConfig& cfg);
void write_json(const std::string& path, const nlohmann::json& doc);

// Deterministic order-preserving parallel map; worker count from
// QSPLAB_THREADS (default: hardware concurrency).
void parallel_for(long count, const std::function<void(long)>& fn);

// Runners; each writes its CSV (plus JSON sidecars where noted) into
// cfg.out_dir and returns the paths written.
std::vector<std::string> run_init_fidelity(const ExperimentConfig& cfg);
std::vector<std::string> run_gate_check(const ExperimentConfig& cfg);
std::vector<std::string> run_mbqc(const ExperimentConfig& cfg);
std::vector<std::string> run_dephasing_bench(const ExperimentConfig& cfg);
std::vector<std::string> run_threshold_scan(const ExperimentConfig& cfg);
std::vector<std::string> run_truncation_study(const ExperimentConfig& cfg);
std::vector<std::string> run_homodyne_sample(const ExperimentConfig& cfg);

// Dispatch by cfg.name; ConfigError on unknown experiment.
std::vector<std::string> run(const ExperimentConfig& cfg);

}  // namespace qsplab::experiments
