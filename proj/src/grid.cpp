#include "spinlab/grid.hpp"

#include <cmath>
#include <string>

#include "spinlab/errors.hpp"

namespace spinlab {

ConfigError::ConfigError(std::vector<std::string> violations)
    : Error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  " + v;
        return msg;
      }()),
      violations_(std::move(violations)) {}

void Grid2D::validate() const {
  if (nx < kMinNodes || ny < kMinNodes)
    throw GridError("grid needs at least 16 nodes per axis, got " + std::to_string(nx) + "x" +
                    std::to_string(ny));
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy))
    throw GridError("grid spacings must be positive");
  if (!std::isfinite(x0) || !std::isfinite(y0)) throw GridError("grid origin must be finite");
}

Grid2D Grid2D::make(int nx, int ny, double dx, double dy, double x0, double y0) {
  Grid2D g{nx, ny, dx, dy, x0, y0};
  g.validate();
  return g;
}

Grid2D Grid2D::spanning(int nx, int ny, double x_lo, double x_hi, double y_lo, double y_hi) {
  if (nx < 2 || ny < 2) throw GridError("grid needs at least 16 nodes per axis");
  return make(nx, ny, (x_hi - x_lo) / (nx - 1), (y_hi - y_lo) / (ny - 1), x_lo, y_lo);
}

}  // namespace spinlab
