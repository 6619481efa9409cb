#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "spinlab/field.hpp"

namespace spinlab::cli {

extern const std::vector<std::string> kScenarios;

struct GridSpec {
  int nx = 64, ny = 64;
  double dx = 0.1875, dy = 0.1875;
  double x0 = -6.0, y0 = -6.0;
  Grid2D grid() const { return Grid2D::make(nx, ny, dx, dy, x0, y0); }
  // Same extent, half spacing: 2n - 1 nodes that nest the coarse ones.
  Grid2D refined() const { return Grid2D::make(2 * nx - 1, 2 * ny - 1, dx / 2, dy / 2, x0, y0); }
};

struct Params {
  double b = 0.7;
  double e = 1.0;
  double kappa = 2.0;
  int n = 2;
  double a = 1.0;
  double c_re = 1.0, c_im = 0.5;
};

// Keys not given take the preset of the chosen kind.
struct InitSpec {
  std::string kind;
  double amplitude = 0.0, width = 0.0, k = 0.0, l = 0.0, radius = 0.0;
  std::uint64_t seed = 1;
};

struct TimeSpec {
  double t_end = 0.2;
  double dt = 0.0;         // 0: 0.1 dx dy
  int snapshot_every = 0;  // 0: eight snapshot intervals
};

struct Tolerances {
  double ratio_min = 12.0;    // residual drop under halving
  double order_min = 3.5;     // measured convergence order
  double residual_max = 1e-12;
  double drift_max = 1e-4;
};

struct ScenarioConfig {
  std::string scenario;
  GridSpec grid;
  Params params;
  InitSpec init;
  TimeSpec time;
  std::vector<cplx> lambda_samples{cplx(0.3), cplx(0.7, 0.2), cplx(1.0), cplx(1.5), cplx(0.5, -0.4)};
  std::string output_dir;
  Tolerances tol;
};

// Validates everything before returning; ConfigError lists all violations.
ScenarioConfig parse_config(const std::string& text);
nlohmann::ordered_json to_json(const ScenarioConfig& c);
// Keys, types and defaults of the config document.
nlohmann::ordered_json config_schema();

// Kinds accepted by each scenario family.
bool is_spin_kind(const std::string& kind);
bool is_q_kind(const std::string& kind);
std::string default_kind(const std::string& scenario);
// Fills zero-valued init fields with the presets of init.kind.
InitSpec with_presets(const InitSpec& in);

}  // namespace spinlab::cli
