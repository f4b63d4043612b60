#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qsplab/experiments.hpp"

using namespace qsplab;
namespace experiments = qsplab::experiments;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// non-'#' lines only
std::string csv_body(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string line, body;
    while (std::getline(in, line))
        if (line.empty() || line[0] != '#') body += line + "\n";
    return body;
}

struct TempDir {
    fs::path path;
    TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("qsplab_test_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("grid grammar") {
    auto g1 = experiments::parse_grid("1,2.5,3");
    CHECK(g1 == std::vector<double>{1.0, 2.5, 3.0});
    auto g2 = experiments::parse_grid("0..2");
    CHECK(g2 == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
    auto g3 = experiments::parse_grid("0..1:5");
    CHECK(g3 == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    auto g4 = experiments::parse_grid("log:0.01:1:3");
    REQUIRE(g4.size() == 3);
    CHECK(g4[0] == doctest::Approx(0.01));
    CHECK(g4[1] == doctest::Approx(0.1));
    CHECK(g4[2] == doctest::Approx(1.0));
    CHECK(experiments::parse_grid("2..2").size() == 1);
    CHECK(experiments::parse_grid("5").size() == 1);

    CHECK_THROWS_AS((void)experiments::parse_grid(""), ConfigError);
    CHECK_THROWS_AS((void)experiments::parse_grid("a,b"), ConfigError);
    CHECK_THROWS_AS((void)experiments::parse_grid("log:0:1:4"), ConfigError);
    CHECK_THROWS_AS((void)experiments::parse_grid("log:0.1:1"), ConfigError);
    CHECK_THROWS_AS((void)experiments::parse_grid("3..1"), ConfigError);
    CHECK_THROWS_AS((void)experiments::parse_grid("1..2:0"), ConfigError);
}

TEST_CASE("fnv1a known vectors") {
    // standard FNV-1a 64-bit test values
    CHECK(experiments::fnv1a("") == 14695981039346656037ull);
    CHECK(experiments::fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(experiments::fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("config parsing, overrides and validation") {
    auto cfg = experiments::config_from_json(R"({
        "experiment": "init-fidelity",
        "seed": 777,
        "backend": "dense",
        "trajectories": 50,
        "params": {"alpha": "1,2"}
    })");
    CHECK(cfg.name == "init-fidelity");
    CHECK(cfg.seed == 777);
    CHECK(cfg.backend == "dense");
    CHECK(cfg.trajectories == 50);
    CHECK(cfg.params.at("alpha").get<std::string>() == "1,2");

    CHECK_THROWS_AS((void)experiments::config_from_json("[1,2]"), ConfigError);
    CHECK_THROWS_AS((void)experiments::config_from_json("{bad"), ConfigError);
    CHECK_THROWS_AS((void)experiments::config_from_json(R"({"experimnt": "x"})"), ConfigError);
    CHECK_THROWS_AS((void)experiments::config_from_json(R"({"params": 3})"), ConfigError);
    CHECK_THROWS_AS((void)experiments::config_from_json(R"({"seed": "abc"})"), ConfigError);
}

TEST_CASE("config hash ignores the output directory but tracks parameters") {
    experiments::ExperimentConfig a;
    a.name = "homodyne-sample";
    a.params["alpha"] = 1.0;
    experiments::ExperimentConfig b = a;
    b.out_dir = "/somewhere/else";
    CHECK(experiments::config_hash(a) == experiments::config_hash(b));
    b.params["alpha"] = 2.0;
    CHECK(experiments::config_hash(a) != experiments::config_hash(b));
    b = a;
    b.seed = a.seed + 1;
    CHECK(experiments::config_hash(a) != experiments::config_hash(b));
}

TEST_CASE("fmt uses 17 significant digits") {
    CHECK(experiments::fmt(0.1) == "0.10000000000000001");
    CHECK(experiments::fmt(1.0) == "1");
    CHECK(experiments::fmt(long(42)) == "42");
}

TEST_CASE("csv writer emits metadata and a byte-stable body") {
    TempDir dir("csv");
    experiments::ExperimentConfig cfg;
    cfg.name = "homodyne-sample";
    cfg.seed = 5;
    cfg.out_dir = dir.path.string();
    experiments::Csv csv;
    csv.columns = {"a", "b"};
    csv.add_row({"1", "2"});
    csv.add_row({experiments::fmt(0.5), experiments::fmt(long(7))});
    std::string p1 = (dir.path / "one.csv").string();
    std::string p2 = (dir.path / "two.csv").string();
    experiments::write_csv(p1, csv, cfg);
    experiments::write_csv(p2, csv, cfg);

    std::string text = slurp(p1);
    CHECK(text.find("# qsplab") == 0);
    CHECK(text.find("# config_hash: ") != std::string::npos);
    CHECK(text.find("# seed: 5") != std::string::npos);
    CHECK(text.find("# timestamp: ") != std::string::npos);
    CHECK(csv_body(p1) == "a,b\n1,2\n0.5,7\n");
    CHECK(csv_body(p1) == csv_body(p2));

    CHECK_THROWS_AS(csv.add_row({"only-one"}), ConfigError);
}

TEST_CASE("parallel_for preserves order and propagates exceptions") {
    setenv("QSPLAB_THREADS", "4", 1);
    std::vector<long> out(64, -1);
    experiments::parallel_for(64, [&](long i) { out[size_t(i)] = i * i; });
    for (long i = 0; i < 64; ++i) CHECK(out[size_t(i)] == i * i);

    CHECK_THROWS_AS(experiments::parallel_for(8,
                                      [&](long i) {
                                          if (i == 3) throw ConfigError("boom");
                                      }),
                    ConfigError);
    unsetenv("QSPLAB_THREADS");
}

TEST_CASE("dispatch rejects unknown experiments") {
    experiments::ExperimentConfig cfg;
    cfg.name = "coffee-break";
    CHECK_THROWS_AS((void)experiments::run(cfg), ConfigError);
}

TEST_CASE("homodyne runner writes shot records that honor the schema") {
    TempDir dir("shots");
    experiments::ExperimentConfig cfg;
    cfg.name = "homodyne-sample";
    cfg.out_dir = dir.path.string();
    cfg.seed = 11;
    cfg.params["shots"] = 64;
    cfg.params["alpha"] = 1.0;
    cfg.params["n_bar"] = 0.0;
    auto paths = experiments::run(cfg);
    REQUIRE(paths.size() == 1);
    std::string body = csv_body(paths[0]);
    CHECK(body.rfind("shot_id,mode,basis,theta,raw_x,logical_bit,weight\n", 0) == 0);
    // 64 shots + header
    int lines = 0;
    for (char c : body) lines += (c == '\n');
    CHECK(lines == 65);

    // rerun reproduces the body byte for byte
    TempDir dir2("shots2");
    cfg.out_dir = dir2.path.string();
    auto paths2 = experiments::run(cfg);
    CHECK(csv_body(paths[0]) == csv_body(paths2[0]));
}

TEST_CASE("init-fidelity runner covers its grid") {
    TempDir dir("init");
    experiments::ExperimentConfig cfg;
    cfg.name = "init-fidelity";
    cfg.out_dir = dir.path.string();
    cfg.params["n_bar"] = "0,1";
    cfg.params["alpha"] = "1,2";
    auto paths = experiments::run(cfg);
    std::string body = csv_body(paths[0]);
    int lines = 0;
    for (char c : body) lines += (c == '\n');
    CHECK(lines == 5);  // header + 4 grid points
    CHECK(body.find("n_bar,alpha,cutoff,x_e,infidelity_sim,infidelity_analytic,delta") == 0);
}

TEST_CASE("truncation-study runner reports the budget") {
    TempDir dir("trunc");
    experiments::ExperimentConfig cfg;
    cfg.name = "truncation-study";
    cfg.out_dir = dir.path.string();
    cfg.params["n_bar"] = 0.0;  // small budget keeps the test quick
    auto paths = experiments::run(cfg);
    REQUIRE(paths.size() == 2);
    auto doc = nlohmann::json::parse(slurp(paths[1]));
    CHECK(doc.at("lambda").get<double>() == doctest::Approx(6.0));
    CHECK(doc.at("r_max").get<int>() == 15);
    CHECK(doc.at("k_max").get<int>() == 130);
    CHECK(doc.at("weighted_gate_error").get<double>() <= 0.05);
    CHECK(doc.at("naive_double_defect_at_r_max").get<double>() > 1.0);
}

TEST_CASE("mbqc runner produces a sidecar with the oracle comparison") {
    TempDir dir("mbqc");
    experiments::ExperimentConfig cfg;
    cfg.name = "mbqc-run";
    cfg.out_dir = dir.path.string();
    cfg.backend = "trajectory";
    cfg.trajectories = 200;
    cfg.params["wire_thetas"] = "0.7853981633974483";
    cfg.params["alpha"] = 2.5;
    cfg.params["n_bar"] = 0.2;
    cfg.params["cutoff"] = 32;
    auto paths = experiments::run(cfg);
    REQUIRE(paths.size() == 2);
    auto doc = nlohmann::json::parse(slurp(paths[1]));
    CHECK(doc.at("oracle_fidelity").get<double>() > 0.8);
    CHECK(doc.at("trajectories").get<long>() == 200);
    std::string body = csv_body(paths[0]);
    CHECK(body.find("step,vertex,theta,plus_frequency") == 0);
}
