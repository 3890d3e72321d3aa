#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "fractree/cli.hpp"
#include "fractree/io.hpp"

using namespace fractree;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fractree_test_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

const char* kIfsSpec =
    "{\"v\":1,\"kind\":\"ifs\",\"maps\":["
    "{\"lambda\":0.6,\"theta\":0.6283185307179586,\"t\":[0.0,1.0]},"
    "{\"lambda\":0.6,\"theta\":-0.6283185307179586,\"t\":[0.0,1.0]}]}";

const char* kLsysSpec =
    "{\"v\":1,\"kind\":\"lsystem\",\"axiom\":\"F\",\"rules\":{\"F\":\"F[+F][-F]\"},"
    "\"angle\":0.5235987755982988,\"scale_per_depth\":0.6}";

const char* kGeneratorSpec =
    "{\"v\":1,\"kind\":\"generator\",\"rho\":{\"kind\":\"exponential\",\"base\":0.88},"
    "\"kappa\":{\"kind\":\"constant\",\"value\":0.3141592653589793},"
    "\"phase_mode\":\"global\",\"span\":1.0,"
    "\"schedule\":[{\"rules\":[{\"lambda\":1.0,\"sigma\":1},{\"lambda\":1.0,\"sigma\":-1}]}]}";

RunConfig base_config(RunConfig::Command cmd, const std::string& input,
                      const std::string& out_prefix) {
    RunConfig config;
    config.command = cmd;
    config.input_path = input;
    config.out_prefix = out_prefix;
    return config;
}

}  // namespace

TEST_CASE("missing input file exits 2 with io error JSON") {
    TempDir dir;
    std::ostringstream out;
    auto config = base_config(RunConfig::Command::grow, dir.file("absent.json"),
                              dir.file("out"));
    int code = run(config, out);
    CHECK(code == kExitIoError);
    auto err = nlohmann::json::parse(out.str());
    CHECK(err["kind"] == "io");
}

TEST_CASE("grow emits tree JSON and SVG") {
    TempDir dir;
    save_text(dir.file("gen.json"), kGeneratorSpec);
    std::ostringstream out;
    auto config = base_config(RunConfig::Command::grow, dir.file("gen.json"),
                              dir.file("fig1"));
    config.depth = 6;
    CHECK(run(config, out) == kExitOk);

    auto tree = tree_from_json(load_text(dir.file("fig1.tree.json")));
    CHECK(tree.branches.size() == 127);
    std::string svg = load_text(dir.file("fig1.svg"));
    CHECK(svg.rfind("<?xml", 0) == 0);
}

TEST_CASE("grow rejects discrete specs") {
    TempDir dir;
    save_text(dir.file("ifs.json"), kIfsSpec);
    std::ostringstream out;
    auto config = base_config(RunConfig::Command::grow, dir.file("ifs.json"), dir.file("x"));
    CHECK(run(config, out) == kExitError);
    CHECK(nlohmann::json::parse(out.str())["kind"] == "config");
}

TEST_CASE("compile emits a passing certificate for the example system") {
    TempDir dir;
    save_text(dir.file("ifs.json"), kIfsSpec);
    std::ostringstream out;
    auto config = base_config(RunConfig::Command::compile, dir.file("ifs.json"),
                              dir.file("ex1"));
    config.depth = 5;
    CHECK(run(config, out) == kExitOk);

    auto cert = nlohmann::json::parse(load_text(dir.file("ex1.cert.json")));
    CHECK(cert["isomorphic"] == true);
    CHECK(cert["max_gap"].get<double>() < 1e-9);
    CHECK(fs::exists(dir.file("ex1.tree.json")));
}

TEST_CASE("analyze writes the recovery reports") {
    TempDir dir;
    save_text(dir.file("gen.json"), kGeneratorSpec);
    std::ostringstream out;
    auto config = base_config(RunConfig::Command::analyze, dir.file("gen.json"),
                              dir.file("rec"));
    config.depth = 6;
    CHECK(run(config, out) == kExitOk);

    std::string csv = load_text(dir.file("rec.recovery.csv"));
    CHECK(csv.rfind("g,lambda_hat_mean", 0) == 0);
    auto parsed = nlohmann::json::parse(load_text(dir.file("rec.recovery.json")));
    CHECK(parsed["rows"].size() == 5);  // generations 2..6
    double lam = parsed["rows"][0]["lambda_hat_mean"].get<double>();
    CHECK(std::abs(lam - 0.88) < 1e-9);
}

TEST_CASE("verify passes on the example system and emits the canopy table") {
    TempDir dir;
    save_text(dir.file("ifs.json"), kIfsSpec);
    std::ostringstream out;
    auto config = base_config(RunConfig::Command::verify, dir.file("ifs.json"),
                              dir.file("ver"));
    config.depth = 6;
    config.k_max = 6;
    config.k_ref = 10;
    CHECK(run(config, out) == kExitOk);
    CHECK(out.str().find("VERIFY PASS") != std::string::npos);
    CHECK(load_text(dir.file("ver.canopy.csv")).rfind("k,hausdorff,fitted_ratio\n", 0) == 0);

    // An unattainable tolerance must flip the exit status.
    std::ostringstream out2;
    config.tolerance = 1e-18;
    config.out_prefix = dir.file("ver2");
    CHECK(run(config, out2) == kExitChecksFailed);
    CHECK(out2.str().find("FAIL") != std::string::npos);
}

TEST_CASE("verify checks the lsystem certificate with the chord policy") {
    TempDir dir;
    save_text(dir.file("lsys.json"), kLsysSpec);
    std::ostringstream out;
    auto config = base_config(RunConfig::Command::verify, dir.file("lsys.json"),
                              dir.file("lver"));
    config.depth = 5;
    config.policy = EdgeCurvePolicy::chord();
    CHECK(run(config, out) == kExitOk);
    CHECK(out.str().find("VERIFY PASS") != std::string::npos);
}

TEST_CASE("deep lsystem compilation under the matched policy surfaces no_solution") {
    TempDir dir;
    save_text(dir.file("lsys.json"), kLsysSpec);
    std::ostringstream out;
    auto config = base_config(RunConfig::Command::compile, dir.file("lsys.json"),
                              dir.file("deep"));
    config.depth = 6;  // alternating turns reflect the heading to exactly pi
    CHECK(run(config, out) == kExitError);
    CHECK(nlohmann::json::parse(out.str())["kind"] == "no_solution");
}

TEST_CASE("render reproduces the grow SVG from the tree JSON") {
    TempDir dir;
    save_text(dir.file("gen.json"), kGeneratorSpec);
    std::ostringstream out;
    auto grow_config = base_config(RunConfig::Command::grow, dir.file("gen.json"),
                                   dir.file("a"));
    grow_config.depth = 5;
    CHECK(run(grow_config, out) == kExitOk);

    auto render_config = base_config(RunConfig::Command::render, dir.file("a.tree.json"),
                                     dir.file("b"));
    CHECK(run(render_config, out) == kExitOk);
    CHECK(load_text(dir.file("b.svg")) == load_text(dir.file("a.svg")));
}
