#include <filesystem>
#include <fstream>
#include <sstream>

#include "akhlab/cli.hpp"
#include "akhlab/csv.hpp"
#include "akhlab/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace akhlab;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "akhlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("akhlab_cli_" + name);
  fs::remove_all(p);
  return p;
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

}  // namespace

TEST_CASE("sha256 of a known string") {
  const fs::path p = fs::temp_directory_path() / "akhlab_sha_test.txt";
  std::ofstream(p, std::ios::binary) << "abc";
  CHECK(sha256_file(p) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  fs::remove(p);
}

TEST_CASE("doubles are written with round-trip precision") {
  for (double v : {0.1, 1.0 / 3.0, -2.4142135623730951, 1e-300, 6.02214076e23}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("verify-appendix with defaults") {
  const auto dir = scratch("appendix");
  const auto r = invoke({"verify-appendix", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto summary = read_json(dir / "summary.json");
  CHECK(summary["zero_coefficients"] == 15);
  const auto manifest = read_json(dir / "manifest.json");
  CHECK(manifest["command"] == "akhlab verify-appendix");
  for (const auto& f : manifest["files"]) {
    CHECK(f["sha256"] == sha256_file(dir / f["path"].get<std::string>()));
  }
  CHECK(manifest["verdicts"]["all_coefficients_zero"] == true);
  CHECK_FALSE(fs::exists(dir / "failures.json"));
}

TEST_CASE("residual with negative times on the command line") {
  const auto dir = scratch("residual");
  const auto r = invoke({"residual", "--a", "0.25", "--n", "512", "--times", "-3,0,2", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto lines = read_lines(dir / "residual.csv");
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "a,t,n_points,sup_norm,l2_norm,under_resolved");
  CHECK(lines[1].rfind("0.25,-3,512,", 0) == 0);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    std::stringstream ss(lines[k]);
    std::string cell;
    for (int c = 0; c < 4; ++c) std::getline(ss, cell, ',');
    CHECK(std::stod(cell) <= 1e-8);
  }
}

TEST_CASE("instability experiment") {
  const auto dir = scratch("instability");
  const auto r = invoke({"experiment", "instability", "--a", "0.25", "--s", "0.6", "--T", "2,4,6,8", "--out", dir.string()});
  CHECK(r.code == 0);
  const auto lines = read_lines(dir / "instability.csv");
  REQUIRE(lines.size() == 5);
  double prev = 0.0;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const double ratio = std::stod(lines[k].substr(lines[k].rfind(',') + 1));
    CHECK(ratio > prev);
    prev = ratio;
  }
}

TEST_CASE("runs are reproducible byte for byte") {
  const auto d1 = scratch("repro1");
  const auto d2 = scratch("repro2");
  invoke({"experiment", "divergence", "--t-span", "0,0.5", "--seed", "4", "--plots", "--out", d1.string()});
  invoke({"experiment", "divergence", "--t-span", "0,0.5", "--seed", "4", "--plots", "--out", d2.string()});
  const auto m1 = read_json(d1 / "manifest.json");
  const auto m2 = read_json(d2 / "manifest.json");
  CHECK(m1["files"] == m2["files"]);
  CHECK(m1["rng"]["seed"] == 4);
  CHECK(fs::exists(d1 / "divergence.svg"));
}

TEST_CASE("config file with flag overrides") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  const auto cfg = dir / "run.json";
  std::ofstream(cfg) << R"({"a": 0.3, "times": [0.5, 1.5], "x": [0.1]})";
  const auto r = invoke({"eval", "--config", cfg.string(), "--a", "0.2", "--out", (dir / "out").string()});
  CHECK(r.code == 0);
  const auto manifest = read_json(dir / "out" / "manifest.json");
  CHECK(manifest["config"]["a"] == 0.2);
  CHECK(manifest["config"]["times"] == json::array({0.5, 1.5}));
  CHECK(read_lines(dir / "out" / "eval.csv").size() == 3);
}

TEST_CASE("usage errors exit with status 2") {
  const auto dir = scratch("usage");
  fs::create_directories(dir);
  CHECK(invoke({"residual", "--a", "0.5", "--out", dir.string()}).code == 2);
  CHECK(invoke({"residual", "--n", "500", "--out", dir.string()}).code == 2);
  CHECK(invoke({"evolve", "--dt", "0.1", "--out", dir.string()}).code == 2);
  CHECK(invoke({"experiment", "nonsense", "--out", dir.string()}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"eval", "--times", "1,x"}).code == 2);
  const auto bad = dir / "bad.json";
  std::ofstream(bad) << R"({"a": 0.3, "colour": "red"})";
  const auto r = invoke({"eval", "--config", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("colour") != std::string::npos);
  std::ofstream(bad) << R"({"a": "big"})";
  CHECK(invoke({"eval", "--config", bad.string()}).code == 2);
}

TEST_CASE("config documents round trip") {
  cli::RunConfig c;
  c.subcommand = cli::Subcommand::experiment;
  c.experiment = cli::ExperimentKind::mi;
  c.a = 0.1;
  c.mode = 2;
  const auto back = cli::apply_json(cli::to_json(c));
  CHECK(cli::to_json(back) == cli::to_json(c));
  CHECK((*c.resolved().t_span)[1] == doctest::Approx(5.0 / 0.8));
}

TEST_CASE("failing verdicts exit with status 1 and are listed") {
  // 16 points cannot resolve four derivatives of the breather
  const auto dir = scratch("failing");
  const auto r = invoke({"residual", "--n", "16", "--out", dir.string()});
  CHECK(r.code == 1);
  const auto failures = read_json(dir / "failures.json");
  CHECK(failures["failed"] == json::array({"residual_sup_norm_le_1e-8"}));
  CHECK(read_json(dir / "manifest.json")["verdicts"]["residual_sup_norm_le_1e-8"] == false);
}
