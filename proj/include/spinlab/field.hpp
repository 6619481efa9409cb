#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "spinlab/errors.hpp"
#include "spinlab/grid.hpp"
#include "spinlab/parallel.hpp"

namespace spinlab {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2cd;

namespace detail {

template <class T>
T zero_value() {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, cplx>) {
    return T{};
  } else {
    return T::Zero();
  }
}

template <class T>
bool is_finite(const T& v) {
  if constexpr (std::is_arithmetic_v<T>) {
    return std::isfinite(v);
  } else if constexpr (std::is_same_v<T, cplx>) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  } else {
    return v.allFinite();
  }
}

// Max-norm of a single sample (max |component|).
template <class T>
double sample_max_abs(const T& v) {
  if constexpr (std::is_arithmetic_v<T> || std::is_same_v<T, cplx>) {
    return std::abs(v);
  } else {
    return v.cwiseAbs().maxCoeff();
  }
}

}  // namespace detail

// Samples of one quantity on every node of a Grid2D.
template <class T>
class Field {
 public:
  using value_type = T;

  Field() = default;
  explicit Field(const Grid2D& grid) : grid_(grid), data_(grid.size(), detail::zero_value<T>()) {}
  Field(const Grid2D& grid, const T& fill) : grid_(grid), data_(grid.size(), fill) {}

  const Grid2D& grid() const { return grid_; }
  int nx() const { return grid_.nx; }
  int ny() const { return grid_.ny; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int i, int j) { return data_[grid_.index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[grid_.index(i, j)]; }
  T& operator[](std::size_t k) { return data_[k]; }
  const T& operator[](std::size_t k) const { return data_[k]; }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }
  std::span<T> row(int j) { return std::span<T>(data_).subspan(grid_.index(0, j), grid_.nx); }
  std::span<const T> row(int j) const {
    return std::span<const T>(data_).subspan(grid_.index(0, j), grid_.nx);
  }

  bool all_finite() const {
    for (const auto& v : data_) {
      if (!detail::is_finite(v)) return false;
    }
    return true;
  }

  Field& operator+=(const Field& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  template <class S>
  Field& operator*=(const S& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  void check_same(const Field& o) const {
    if (!(grid_ == o.grid_)) throw GridError("field grids do not match");
  }

 private:
  Grid2D grid_{};
  std::vector<T> data_;
};

using ScalarField = Field<double>;
using CplxField = Field<cplx>;
using Vec3Field = Field<Vec3>;
using Mat2Field = Field<Mat2>;

template <class T>
Field<T> operator+(Field<T> a, const Field<T>& b) {
  a += b;
  return a;
}
template <class T>
Field<T> operator-(Field<T> a, const Field<T>& b) {
  a -= b;
  return a;
}
template <class T, class S>
  requires std::is_arithmetic_v<S> || std::is_same_v<S, cplx>
Field<T> operator*(const S& s, Field<T> a) {
  a *= s;
  return a;
}
template <class T>
Field<T> operator-(Field<T> a) {
  a *= -1.0;
  return a;
}

inline void check_grid(const Grid2D& a, const Grid2D& b) {
  if (!(a == b)) throw GridError("field grids do not match");
}

// Pointwise map over one or more fields on a shared grid. The callable's
// result type becomes the element type of the output.
template <class F, class T0, class... Ts>
auto map(F&& f, const Field<T0>& a, const Field<Ts>&... rest) {
  using R = std::decay_t<decltype(f(a[0], rest[0]...))>;
  (check_grid(a.grid(), rest.grid()), ...);
  Field<R> out(a.grid());
  parallel_for(0, out.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) out[k] = R(f(a[k], rest[k]...));
  });
  return out;
}

// Field whose value at node (i, j) is f(x_i, y_j).
template <class F>
auto sample(const Grid2D& g, F&& f) {
  using R = std::decay_t<decltype(f(0.0, 0.0))>;
  Field<R> out(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) out(i, j) = R(f(g.x(i), g.y(j)));
  return out;
}

template <class T>
double max_abs(const Field<T>& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, detail::sample_max_abs(v));
  return m;
}

template <class T>
double max_abs_diff(const Field<T>& a, const Field<T>& b) {
  a.check_same(b);
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    T d = a[k] - b[k];
    m = std::max(m, detail::sample_max_abs(d));
  }
  return m;
}

// Max-norm restricted to nodes at least `margin` away from every edge.
template <class T>
double max_abs_interior(const Field<T>& f, int margin) {
  double m = 0.0;
  for (int j = margin; j < f.ny() - margin; ++j)
    for (int i = margin; i < f.nx() - margin; ++i) m = std::max(m, detail::sample_max_abs(f(i, j)));
  return m;
}

inline ScalarField real_part(const CplxField& f) {
  return map([](const cplx& z) { return z.real(); }, f);
}
inline ScalarField imag_part(const CplxField& f) {
  return map([](const cplx& z) { return z.imag(); }, f);
}
inline CplxField to_complex(const ScalarField& f) {
  return map([](double v) { return cplx(v, 0.0); }, f);
}
inline CplxField conj(const CplxField& f) {
  return map([](const cplx& z) { return std::conj(z); }, f);
}
inline ScalarField abs2(const CplxField& f) {
  return map([](const cplx& z) { return std::norm(z); }, f);
}

}  // namespace spinlab
