#pragma once

#include <cstddef>

namespace spinlab {

// Uniform tensor grid. Samples are stored row-major with x varying fastest:
// index(i, j) = j * nx + i, so each row is one x-line at fixed y.
struct Grid2D {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;

  static constexpr int kMinNodes = 16;

  // Throws GridError when nx, ny < 16 or a spacing is not positive.
  static Grid2D make(int nx, int ny, double dx, double dy, double x0, double y0);
  // nx x ny nodes spanning [x_lo, x_hi] x [y_lo, y_hi] inclusive.
  static Grid2D spanning(int nx, int ny, double x_lo, double x_hi, double y_lo, double y_hi);

  double x(int i) const { return x0 + dx * i; }
  double y(int j) const { return y0 + dy * j; }
  double x_end() const { return x(nx - 1); }
  double y_end() const { return y(ny - 1); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
  }

  void validate() const;
  bool operator==(const Grid2D&) const = default;
};

}  // namespace spinlab
