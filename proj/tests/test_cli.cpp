#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "cli/config.hpp"
#include "cli/manifest.hpp"
#include "cli/scenarios.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/parallel.hpp"

using namespace spinlab;
using namespace spinlab::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "spinlab_test_cli" / name;
  fs::remove_all(p);
  return p;
}

std::vector<std::string> violations(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& s) {
  for (const auto& x : v)
    if (x.find(s) != std::string::npos) return true;
  return false;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Check* find_check(const RunResult& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.claim.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("parse_config") {
  SUBCASE("minimal config takes the defaults") {
    const auto c = parse_config(R"({"scenario": "verify-lax", "output_dir": "out"})");
    const ScenarioConfig d;
    CHECK(c.grid.nx == d.grid.nx);
    CHECK(c.params.b == d.params.b);
    CHECK(c.init.kind == "small_perturbation");
    CHECK(c.init.amplitude == 0.2);
    CHECK(c.lambda_samples.size() == 5);
    // the echo is itself a valid config that parses back to the same thing
    const auto again = parse_config(to_json(c).dump());
    CHECK(to_json(again) == to_json(c));
    const auto schema = config_schema();
    const auto echo = to_json(c);
    for (const auto& [key, _] : echo.items()) CHECK(schema["keys"].contains(key));
  }
  SUBCASE("all violations are reported with their paths") {
    const auto v = violations(R"({"grid": {"nx": "wide", "nz": 3}, "params": {"b": 0.5, "beta": 1}, "extra": 1})");
    CHECK(any_contains(v, "missing required key 'scenario'"));
    CHECK(any_contains(v, "missing required key 'output_dir'"));
    CHECK(any_contains(v, "type mismatch at 'grid.nx'"));
    CHECK(any_contains(v, "unknown key 'grid.nz'"));
    CHECK(any_contains(v, "unknown key 'params.beta'"));
    CHECK(any_contains(v, "unknown key 'extra'"));
    CHECK(v.size() == 6);
  }
  SUBCASE("lambda sample entries are checked") {
    const auto v = violations(R"({"scenario": "verify-lax", "output_dir": "o", "lambda_samples": [{"re": 1}, 2, {"im": "x"}]})");
    CHECK(any_contains(v, "'lambda_samples[1]'"));
    CHECK(any_contains(v, "'lambda_samples[2].im'"));
  }
  SUBCASE("b = 0") {
    const auto v = violations(R"({"scenario": "verify-lax", "output_dir": "o", "params": {"b": 0}})");
    REQUIRE(v.size() == 1);
    CHECK(any_contains(v, "parameter b must be nonzero"));
  }
  SUBCASE("E = -1 is out of scope") {
    const auto v = violations(R"({"scenario": "verify-lax", "output_dir": "o", "params": {"e": -1}})");
    REQUIRE(v.size() == 1);
    CHECK(any_contains(v, "out of scope"));
    CHECK(any_contains(v, "README"));
  }
  SUBCASE("semantic errors are collected too") {
    const auto v = violations(
        R"({"scenario": "evolve-spin", "output_dir": "o", "init": {"kind": "plane_wave"}, "grid": {"nx": 8}, "params": {"b": 0}})");
    CHECK(v.size() == 3);
    CHECK(any_contains(v, "not a spin initial condition"));
    CHECK(any_contains(v, "at least 16"));
    CHECK(any_contains(v, "nonzero"));
    CHECK(any_contains(violations(R"({"scenario": "unknown", "output_dir": "o"})"), "unknown scenario"));
  }
  SUBCASE("structural and semantic violations together") {
    const auto v = violations(R"({"scenario": "verify-lax", "params": {"b": 0, "e": -1}, "bogus": 1})");
    CHECK(v.size() == 4);
    CHECK(any_contains(v, "unknown key 'bogus'"));
    CHECK(any_contains(v, "missing required key 'output_dir'"));
    CHECK(any_contains(v, "parameter b must be nonzero"));
    CHECK(any_contains(v, "out of scope"));
  }
  SUBCASE("not json") { CHECK(any_contains(violations("{scenario"), "not valid JSON")); }
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("verify-lambda with a first-order exact solution") {
  auto c = parse_config(R"({"scenario": "verify-lambda", "output_dir": "x",
                            "params": {"n": 1, "kappa": 1, "a": 1, "c_re": 1, "c_im": 0.5}})");
  c.output_dir = scratch("lambda").string();
  const auto r = run_scenario(c);
  CHECK(r.exit_code() == 0);
  const Check* a = find_check(r, "exact lambda: analytic residual");
  REQUIRE(a);
  CHECK(a->verdict == Verdict::Pass);
  CHECK(a->value < 1e-12);
  const std::string summary = slurp(fs::path(c.output_dir) / "summary.csv");
  CHECK(summary.find("\"exact lambda: analytic residual at 100 points\",PASS,") != std::string::npos);
}

TEST_CASE("verify-lax on a constant spin") {
  auto c = parse_config(R"({"scenario": "verify-lax", "output_dir": "x", "init": {"kind": "constant"},
                            "grid": {"nx": 24, "ny": 24, "dx": 0.5, "dy": 0.5}, "time": {"t_end": 0.05}})");
  c.output_dir = scratch("lax_constant").string();
  const auto r = run_scenario(c);
  CHECK(r.exit_code() == 0);
  const Check* z = find_check(r, "zero-curvature spin pair lambda=0.3");
  REQUIRE(z);
  CHECK(z->verdict == Verdict::Pass);
  CHECK(z->value == 0.0);
}

TEST_CASE("determinism and manifest") {
  const std::string text = R"({"scenario": "evolve-q", "output_dir": "x",
                               "grid": {"nx": 32, "ny": 32, "dx": 0.3, "dy": 0.3, "x0": -4.8, "y0": -4.8},
                               "time": {"t_end": 0.05}})";
  auto c = parse_config(text);
  const fs::path da = scratch("det_a"), db = scratch("det_b");
  c.output_dir = da.string();
  const auto a = run_scenario(c);
  c.output_dir = db.string();
  const auto b = run_scenario(c);
  REQUIRE(a.files == b.files);
  for (const auto& f : a.files) {
    if (f == "config.json") continue;  // echoes the output directory
    CHECK_MESSAGE(slurp(da / f) == slurp(db / f), f);
  }

  const fs::path& dir = db;
  const auto entries = read_manifest(dir / "manifest.txt");
  std::set<std::string> listed;
  for (const auto& [hash, name] : entries) {
    CHECK(hash == sha256_file(dir / name));
    listed.insert(name);
  }
  std::set<std::string> on_disk;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().filename() != "manifest.txt") on_disk.insert(e.path().filename().string());
  CHECK(listed == on_disk);
  CHECK(listed.count("summary.csv") == 1);
  CHECK(listed.count("q_final.fld") == 1);
}

TEST_CASE("thread count does not change the output") {
  auto c = parse_config(R"({"scenario": "verify-lax", "output_dir": "x", "init": {"kind": "gaussian_packet"},
                            "grid": {"nx": 24, "ny": 24, "dx": 0.5, "dy": 0.5, "x0": -6, "y0": -6},
                            "time": {"t_end": 0.05}, "lambda_samples": [{"re": 0.7, "im": 0.2}]})");
  const fs::path d1 = scratch("threads_1"), d3 = scratch("threads_3");
  set_thread_count(1);
  c.output_dir = d1.string();
  run_scenario(c);
  set_thread_count(3);
  c.output_dir = d3.string();
  run_scenario(c);
  set_thread_count(0);
  CHECK(slurp(d1 / "lax_residuals.csv") == slurp(d3 / "lax_residuals.csv"));
  CHECK(slurp(d1 / "summary.csv") == slurp(d3 / "summary.csv"));
}

TEST_CASE("verdicts and errors") {
  SUBCASE("a failed claim gives exit status 1") {
    auto c = parse_config(R"({"scenario": "invariants-drift", "output_dir": "x", "init": {"kind": "lump"},
                              "grid": {"nx": 24, "ny": 24, "dx": 0.5, "dy": 0.5}, "time": {"t_end": 0.01},
                              "tolerances": {"drift_max": 0}})");
    c.output_dir = scratch("fail").string();
    const auto r = run_scenario(c);
    CHECK(r.any_fail());
    CHECK(r.exit_code() == 1);
  }
  SUBCASE("module errors carry the scenario name") {
    auto c = parse_config(R"({"scenario": "evolve-spin", "output_dir": "x", "time": {"t_end": 0}})");
    c.output_dir = scratch("err").string();
    try {
      run_scenario(c);
      FAIL("expected an error");
    } catch (const ScenarioError& e) {
      CHECK(std::string(e.what()).rfind("evolve-spin: ", 0) == 0);
    }
  }
}
