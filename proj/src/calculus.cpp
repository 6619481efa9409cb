#include "spinlab/calculus.hpp"

#include <algorithm>
#include <string>

namespace spinlab {
namespace {

void check_line(std::size_t n) {
  if (n < static_cast<std::size_t>(kMinStencilNodes))
    throw StencilError("stencil needs at least 8 nodes per line, got " + std::to_string(n));
}

std::size_t row_grain(int line_length) {
  return std::max<std::size_t>(1, 4096 / static_cast<std::size_t>(line_length));
}

}  // namespace

template <class T>
void diff_line(std::span<const T> f, double h, int order, std::span<T> g) {
  const std::size_t n = f.size();
  check_line(n);
  // Written in differences so that constants map to exactly zero.
  if (order == 1) {
    const double c = 1.0 / (12.0 * h);
    auto d = [&](std::size_t k, std::size_t r) { return T(f[k] - f[r]); };
    g[0] = T((48.0 * d(1, 0) - 36.0 * d(2, 0) + 16.0 * d(3, 0) - 3.0 * d(4, 0)) * c);
    g[1] = T((-3.0 * d(0, 1) + 18.0 * d(2, 1) - 6.0 * d(3, 1) + d(4, 1)) * c);
    for (std::size_t i = 2; i + 2 < n; ++i) g[i] = T((8.0 * d(i + 1, i - 1) - d(i + 2, i - 2)) * c);
    g[n - 2] = T(-(-3.0 * d(n - 1, n - 2) + 18.0 * d(n - 3, n - 2) - 6.0 * d(n - 4, n - 2) + d(n - 5, n - 2)) * c);
    g[n - 1] = T(-(48.0 * d(n - 2, n - 1) - 36.0 * d(n - 3, n - 1) + 16.0 * d(n - 4, n - 1) - 3.0 * d(n - 5, n - 1)) * c);
  } else if (order == 2) {
    const double c = 1.0 / (12.0 * h * h);
    auto d = [&](std::size_t k, std::size_t r) { return T(f[k] - f[r]); };
    auto end0 = [&](std::size_t a0, std::size_t a1, std::size_t a2, std::size_t a3, std::size_t a4, std::size_t a5) {
      return T((-154.0 * d(a1, a0) + 214.0 * d(a2, a0) - 156.0 * d(a3, a0) + 61.0 * d(a4, a0) - 10.0 * d(a5, a0)) * c);
    };
    auto end1 = [&](std::size_t a0, std::size_t a1, std::size_t a2, std::size_t a3, std::size_t a4, std::size_t a5) {
      return T((10.0 * d(a0, a1) - 4.0 * d(a2, a1) + 14.0 * d(a3, a1) - 6.0 * d(a4, a1) + d(a5, a1)) * c);
    };
    g[0] = end0(0, 1, 2, 3, 4, 5);
    g[1] = end1(0, 1, 2, 3, 4, 5);
    for (std::size_t i = 2; i + 2 < n; ++i)
      g[i] = T((16.0 * (d(i - 1, i) + d(i + 1, i)) - (d(i - 2, i) + d(i + 2, i))) * c);
    g[n - 2] = end1(n - 1, n - 2, n - 3, n - 4, n - 5, n - 6);
    g[n - 1] = end0(n - 1, n - 2, n - 3, n - 4, n - 5, n - 6);
  } else {
    throw StencilError("derivative order must be 1 or 2");
  }
}

template <class T>
void antideriv_line(std::span<const T> f, double h, std::span<T> out) {
  const std::size_t n = f.size();
  check_line(n);
  const double c = h / 24.0;
  T acc = detail::zero_value<T>();
  out[0] = acc;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    T inc;
    if (i == 0) {
      inc = T((9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) * c);
    } else if (i + 2 == n) {
      inc = T((9.0 * f[n - 1] + 19.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]) * c);
    } else {
      inc = T((-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]) * c);
    }
    acc += inc;
    out[i + 1] = acc;
  }
}

std::vector<double> quadrature_weights(int n) {
  check_line(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  auto add = [&](int k, double v) { w[static_cast<std::size_t>(k)] += v / 24.0; };
  for (int i = 0; i + 1 < n; ++i) {
    if (i == 0) {
      add(0, 9.0), add(1, 19.0), add(2, -5.0), add(3, 1.0);
    } else if (i + 2 == n) {
      add(n - 1, 9.0), add(n - 2, 19.0), add(n - 3, -5.0), add(n - 4, 1.0);
    } else {
      add(i - 1, -1.0), add(i, 13.0), add(i + 1, 13.0), add(i + 2, -1.0);
    }
  }
  return w;
}

template <class T>
T midpoint_value(std::span<const T> f, int k) {
  const int n = static_cast<int>(f.size());
  // Lagrange weights for the midpoint of a 4-node window.
  if (k == 0) return T((5.0 * f[0] + 15.0 * f[1] - 5.0 * f[2] + f[3]) / 16.0);
  if (k == n - 2) return T((5.0 * f[n - 1] + 15.0 * f[n - 2] - 5.0 * f[n - 3] + f[n - 4]) / 16.0);
  return T((-f[k - 1] + 9.0 * f[k] + 9.0 * f[k + 1] - f[k + 2]) / 16.0);
}

template <class T>
Field<T> diff(const Field<T>& f, Axis axis, int order) {
  const Grid2D& g = f.grid();
  Field<T> out(g);
  if (axis == Axis::X) {
    check_line(static_cast<std::size_t>(g.nx));
    parallel_for(0, static_cast<std::size_t>(g.ny), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t j = lo; j < hi; ++j)
        diff_line<T>(f.row(static_cast<int>(j)), g.dx, order, out.row(static_cast<int>(j)));
    }, row_grain(g.nx));
  } else {
    check_line(static_cast<std::size_t>(g.ny));
    parallel_for(0, static_cast<std::size_t>(g.nx), [&](std::size_t lo, std::size_t hi) {
      std::vector<T> col(static_cast<std::size_t>(g.ny)), dcol(static_cast<std::size_t>(g.ny));
      for (std::size_t i = lo; i < hi; ++i) {
        for (int j = 0; j < g.ny; ++j) col[j] = f(static_cast<int>(i), j);
        diff_line<T>(col, g.dy, order, dcol);
        for (int j = 0; j < g.ny; ++j) out(static_cast<int>(i), j) = dcol[j];
      }
    }, row_grain(g.ny));
  }
  return out;
}

template <class T>
Field<T> antideriv_x(const Field<T>& f) {
  const Grid2D& g = f.grid();
  Field<T> out(g);
  for (int j = 0; j < g.ny; ++j) antideriv_line<T>(f.row(j), g.dx, out.row(j));
  return out;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double integrate_line(std::span<const double> values, double h) {
  const auto w = quadrature_weights(static_cast<int>(values.size()));
  std::vector<double> terms(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) terms[k] = w[k] * values[k];
  return pairwise_sum(terms) * h;
}

cplx integrate_line(std::span<const cplx> values, double h) {
  std::vector<double> re(values.size()), im(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) re[k] = values[k].real(), im[k] = values[k].imag();
  return {integrate_line(re, h), integrate_line(im, h)};
}

double integrate(const ScalarField& f) {
  const Grid2D& g = f.grid();
  std::vector<double> rows(static_cast<std::size_t>(g.ny));
  for (int j = 0; j < g.ny; ++j) rows[j] = integrate_line(f.row(j), g.dx);
  return integrate_line(rows, g.dy);
}

cplx integrate(const CplxField& f) { return {integrate(real_part(f)), integrate(imag_part(f))}; }

#define SPINLAB_INSTANTIATE(T)                                                 \
  template void diff_line<T>(std::span<const T>, double, int, std::span<T>);  \
  template void antideriv_line<T>(std::span<const T>, double, std::span<T>);  \
  template T midpoint_value<T>(std::span<const T>, int);                       \
  template Field<T> diff<T>(const Field<T>&, Axis, int);                       \
  template Field<T> antideriv_x<T>(const Field<T>&);

SPINLAB_INSTANTIATE(double)
SPINLAB_INSTANTIATE(cplx)
SPINLAB_INSTANTIATE(Vec3)
SPINLAB_INSTANTIATE(Mat2)

#undef SPINLAB_INSTANTIATE

}  // namespace spinlab
