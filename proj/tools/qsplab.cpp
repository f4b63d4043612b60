// qsplab: experiment driver for the parity-encoded bosonic qubit simulator.
//
// Every subcommand accepts --config <file.json> plus flag overrides; flags
// that were passed on the command line win over the config file. Results are
// CSV files (17 significant digits, '#' metadata header) plus JSON sidecars.

#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "qsplab/errors.hpp"
#include "qsplab/experiments.hpp"

namespace experiments = qsplab::experiments;

namespace {

struct Common {
    std::string config_path;
    std::uint64_t seed = 12345;
    std::string out_dir = ".";
    std::string backend = "trajectory";
    long trajectories = 10000;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "JSON config file (flags override it)");
    sub->add_option("--seed", c.seed, "base RNG seed");
    sub->add_option("--out", c.out_dir, "output directory");
    sub->add_option("--backend", c.backend, "dense | trajectory");
    sub->add_option("--trajectories", c.trajectories, "trajectory count");
}

experiments::ExperimentConfig base_config(const CLI::App* sub, const Common& c, const char* name) {
    experiments::ExperimentConfig cfg;
    if (!c.config_path.empty()) cfg = experiments::load_config_file(c.config_path);
    cfg.name = name;
    if (sub->count("--seed")) cfg.seed = c.seed;
    if (sub->count("--out")) cfg.out_dir = c.out_dir;
    if (sub->count("--backend")) cfg.backend = c.backend;
    if (sub->count("--trajectories")) cfg.trajectories = c.trajectories;
    if (cfg.out_dir.empty()) cfg.out_dir = ".";
    return cfg;
}

void report(const std::vector<std::string>& paths) {
    for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qsplab: truncated-Fock simulator for parity-encoded bosonic qubits"};
    app.require_subcommand(1);

    int rc = 0;
    auto guard = [&rc](auto&& body) {
        try {
            body();
        } catch (const qsplab::Error& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            rc = e.exit_code();
        } catch (const std::exception& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            rc = 1;
        }
    };

    {
        auto* sub = app.add_subcommand("init-fidelity",
                                       "preparation infidelity of |+_L> over a (n_bar, alpha) grid");
        auto c = std::make_shared<Common>();
        auto n_bar = std::make_shared<std::string>();
        auto alpha = std::make_shared<std::string>();
        add_common(sub, *c);
        sub->add_option("--n-bar", *n_bar, "thermal occupation grid (default 0,0.5,1,2)");
        sub->add_option("--alpha", *alpha, "displacement grid (default 0.5,1,2,3)");
        sub->callback([=, &rc]() {
            guard([&] {
                auto cfg = base_config(sub, *c, "init-fidelity");
                if (sub->count("--n-bar")) cfg.params["n_bar"] = *n_bar;
                if (sub->count("--alpha")) cfg.params["alpha"] = *alpha;
                report(experiments::run(cfg));
            });
        });
    }

    {
        auto* sub = app.add_subcommand("gate-check",
                                       "entangling-gate logic table and basis-independence checks");
        auto c = std::make_shared<Common>();
        auto alpha = std::make_shared<double>(3.0);
        auto n_bar = std::make_shared<double>(0.5);
        auto cutoff = std::make_shared<long>(60);
        auto nb_a = std::make_shared<double>(0.0);
        auto nb_b = std::make_shared<double>(1.0);
        add_common(sub, *c);
        sub->add_option("--alpha", *alpha, "displacement magnitude");
        sub->add_option("--n-bar", *n_bar, "thermal occupation for the logic table");
        sub->add_option("--cutoff", *cutoff, "Fock cutoff for the logic table");
        sub->add_option("--n-bar-a", *nb_a, "first occupation for the comparison");
        sub->add_option("--n-bar-b", *nb_b, "second occupation for the comparison");
        sub->callback([=, &rc]() {
            guard([&] {
                auto cfg = base_config(sub, *c, "gate-check");
                if (sub->count("--alpha")) cfg.params["alpha"] = *alpha;
                if (sub->count("--n-bar")) cfg.params["n_bar"] = *n_bar;
                if (sub->count("--cutoff")) cfg.params["cutoff"] = *cutoff;
                if (sub->count("--n-bar-a")) cfg.params["n_bar_a"] = *nb_a;
                if (sub->count("--n-bar-b")) cfg.params["n_bar_b"] = *nb_b;
                report(experiments::run(cfg));
            });
        });
    }

    {
        auto* sub = app.add_subcommand("mbqc-run",
                                       "run a measurement pattern and tomograph the output");
        auto c = std::make_shared<Common>();
        auto pattern = std::make_shared<std::string>();
        auto thetas = std::make_shared<std::string>();
        auto alpha = std::make_shared<double>(3.0);
        auto n_bar = std::make_shared<double>(0.5);
        auto cutoff = std::make_shared<long>(0);
        auto kappa_t = std::make_shared<double>(0.0);
        auto post_select = std::make_shared<bool>(false);
        auto no_frame = std::make_shared<bool>(false);
        add_common(sub, *c);
        sub->add_option("--pattern", *pattern, "pattern JSON file");
        sub->add_option("--wire-thetas", *thetas, "wire measurement angles (grid syntax)");
        sub->add_option("--alpha", *alpha, "displacement magnitude");
        sub->add_option("--n-bar", *n_bar, "thermal occupation");
        sub->add_option("--cutoff", *cutoff, "Fock cutoff (0 = backend default)");
        sub->add_option("--kappa-t", *kappa_t, "dephasing strength after entangling");
        sub->add_flag("--post-select", *post_select, "dense backend: force + outcomes");
        sub->add_flag("--no-frame", *no_frame, "report the raw state, byproducts unfolded");
        sub->callback([=, &rc]() {
            guard([&] {
                auto cfg = base_config(sub, *c, "mbqc-run");
                if (sub->count("--pattern")) cfg.params["pattern_file"] = *pattern;
                if (sub->count("--wire-thetas")) cfg.params["wire_thetas"] = *thetas;
                if (sub->count("--alpha")) cfg.params["alpha"] = *alpha;
                if (sub->count("--n-bar")) cfg.params["n_bar"] = *n_bar;
                if (sub->count("--cutoff")) cfg.params["cutoff"] = *cutoff;
                if (sub->count("--kappa-t")) cfg.params["kappa_t"] = *kappa_t;
                if (*post_select) cfg.params["post_select"] = true;
                if (*no_frame) cfg.params["apply_frame"] = false;
                report(experiments::run(cfg));
            });
        });
    }

    {
        auto* sub = app.add_subcommand("dephasing-bench",
                                       "sphere-averaged fidelity of cat vs parity encodings");
        auto c = std::make_shared<Common>();
        auto alpha = std::make_shared<double>(2.0);
        auto cutoff = std::make_shared<long>(60);
        auto kt_grid = std::make_shared<std::string>();
        auto theta_nodes = std::make_shared<long>(16);
        auto phi_nodes = std::make_shared<long>(16);
        add_common(sub, *c);
        sub->add_option("--alpha", *alpha, "cat amplitude");
        sub->add_option("--cutoff", *cutoff, "Fock cutoff");
        sub->add_option("--kt-grid", *kt_grid, "kappa*t grid (default log:0.01:2:25)");
        sub->add_option("--theta-nodes", *theta_nodes, "Gauss-Legendre nodes in cos(theta)");
        sub->add_option("--phi-nodes", *phi_nodes, "trapezoid nodes in phi");
        sub->callback([=, &rc]() {
            guard([&] {
                auto cfg = base_config(sub, *c, "dephasing-bench");
                if (sub->count("--alpha")) cfg.params["alpha"] = *alpha;
                if (sub->count("--cutoff")) cfg.params["cutoff"] = *cutoff;
                if (sub->count("--kt-grid")) cfg.params["kt_grid"] = *kt_grid;
                if (sub->count("--theta-nodes")) cfg.params["theta_nodes"] = *theta_nodes;
                if (sub->count("--phi-nodes")) cfg.params["phi_nodes"] = *phi_nodes;
                report(experiments::run(cfg));
            });
        });
    }

    {
        auto* sub = app.add_subcommand("threshold-scan",
                                       "dephasing level where each encoding drops to 90%");
        auto c = std::make_shared<Common>();
        auto alphas = std::make_shared<std::string>();
        auto cutoff = std::make_shared<long>(60);
        auto drop = std::make_shared<double>(0.9);
        add_common(sub, *c);
        sub->add_option("--alphas", *alphas, "cat amplitudes (default 1.5,2,3)");
        sub->add_option("--cutoff", *cutoff, "Fock cutoff");
        sub->add_option("--drop-level", *drop, "retention fraction defining the threshold");
        sub->callback([=, &rc]() {
            guard([&] {
                auto cfg = base_config(sub, *c, "threshold-scan");
                if (sub->count("--alphas")) cfg.params["alphas"] = *alphas;
                if (sub->count("--cutoff")) cfg.params["cutoff"] = *cutoff;
                if (sub->count("--drop-level")) cfg.params["drop_level"] = *drop;
                report(experiments::run(cfg));
            });
        });
    }

    {
        auto* sub = app.add_subcommand("truncation-study",
                                       "arbitrary-precision audit of the truncated parity gate");
        auto c = std::make_shared<Common>();
        auto n_bar = std::make_shared<double>(0.5);
        auto tol = std::make_shared<double>(0.01);
        auto theta = std::make_shared<double>(0.7853981633974483);
        auto cutoff = std::make_shared<long>(0);
        add_common(sub, *c);
        sub->add_option("--n-bar", *n_bar, "thermal occupation setting the budget");
        sub->add_option("--tol", *tol, "series tail tolerance");
        sub->add_option("--theta", *theta, "rotation angle under audit");
        sub->add_option("--cutoff", *cutoff, "Fock cutoff (0 = policy)");
        sub->callback([=, &rc]() {
            guard([&] {
                auto cfg = base_config(sub, *c, "truncation-study");
                if (sub->count("--n-bar")) cfg.params["n_bar"] = *n_bar;
                if (sub->count("--tol")) cfg.params["tol"] = *tol;
                if (sub->count("--theta")) cfg.params["theta"] = *theta;
                if (sub->count("--cutoff")) cfg.params["cutoff"] = *cutoff;
                report(experiments::run(cfg));
            });
        });
    }

    {
        auto* sub = app.add_subcommand("homodyne-sample",
                                       "draw position-quadrature shots from a displaced thermal state");
        auto c = std::make_shared<Common>();
        auto n_bar = std::make_shared<double>(0.5);
        auto alpha = std::make_shared<double>(2.0);
        auto shots = std::make_shared<long>(10000);
        auto cutoff = std::make_shared<long>(0);
        auto theta = std::make_shared<double>(0.0);
        add_common(sub, *c);
        sub->add_option("--n-bar", *n_bar, "thermal occupation");
        sub->add_option("--alpha", *alpha, "displacement magnitude");
        sub->add_option("--shots", *shots, "number of samples");
        sub->add_option("--cutoff", *cutoff, "Fock cutoff (0 = policy)");
        sub->add_option("--theta", *theta, "equatorial measurement angle (XY basis)");
        sub->callback([=, &rc]() {
            guard([&] {
                auto cfg = base_config(sub, *c, "homodyne-sample");
                if (sub->count("--n-bar")) cfg.params["n_bar"] = *n_bar;
                if (sub->count("--alpha")) cfg.params["alpha"] = *alpha;
                if (sub->count("--shots")) cfg.params["shots"] = *shots;
                if (sub->count("--cutoff")) cfg.params["cutoff"] = *cutoff;
                if (sub->count("--theta")) cfg.params["theta"] = *theta;
                report(experiments::run(cfg));
            });
        });
    }

    CLI11_PARSE(app, argc, argv);
    return rc;
}
