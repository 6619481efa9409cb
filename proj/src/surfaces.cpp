#include "spinlab/surfaces.hpp"

#include <algorithm>
#include <cmath>

namespace spinlab {

namespace {

Axis axis_of(int a) { return a == 0 ? Axis::X : Axis::Y; }

void fill_inverse(FormData& f) {
  const Grid2D& grid = f.grid();
  for (auto& row : f.ginv)
    for (auto& e : row) e = ScalarField(grid);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double E = f.g[0][0][n], F = f.g[0][1][n], G = f.g[1][1][n];
    const double det = E * G - F * F;
    if (!(det > 1e-14) || !(E > 0.0)) throw MetricError("metric is not positive definite");
    f.ginv[0][0][n] = G / det;
    f.ginv[0][1][n] = f.ginv[1][0][n] = -F / det;
    f.ginv[1][1][n] = E / det;
  }
}

ScalarField dot_field(const Vec3Field& a, const Vec3Field& b) {
  return map([](const Vec3& u, const Vec3& v) { return u.dot(v); }, a, b);
}

}  // namespace

FormData fundamental_forms(const Vec3Field& r) {
  FormData f;
  f.r = r;
  f.rx = diff(r, Axis::X);
  f.ry = diff(r, Axis::Y);
  const Vec3Field rxx = diff(r, Axis::X, 2);
  const Vec3Field ryy = diff(r, Axis::Y, 2);
  const Vec3Field rxy = diff(f.rx, Axis::Y);
  f.n = Vec3Field(r.grid());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const Vec3 c = f.rx[k].cross(f.ry[k]);
    const double a = c.norm();
    if (a < 1e-12) throw ImmersionError("r_x ^ r_y vanishes: patch is not immersed");
    f.n[k] = c / a;
  }
  f.g[0][0] = dot_field(f.rx, f.rx);
  f.g[0][1] = f.g[1][0] = dot_field(f.rx, f.ry);
  f.g[1][1] = dot_field(f.ry, f.ry);
  f.b[0][0] = dot_field(f.n, rxx);
  f.b[0][1] = f.b[1][0] = dot_field(f.n, rxy);
  f.b[1][1] = dot_field(f.n, ryy);
  f.has_patch = true;
  fill_inverse(f);
  return f;
}

FormData forms_from_coefficients(const ScalarField& E, const ScalarField& F, const ScalarField& G,
                                 const ScalarField& L, const ScalarField& M, const ScalarField& N) {
  for (const auto* s : {&F, &G, &L, &M, &N}) check_grid(E.grid(), s->grid());
  FormData f;
  f.g[0][0] = E;
  f.g[0][1] = f.g[1][0] = F;
  f.g[1][1] = G;
  f.b[0][0] = L;
  f.b[0][1] = f.b[1][0] = M;
  f.b[1][1] = N;
  fill_inverse(f);
  return f;
}

ScalarField gaussian_curvature(const FormData& f) {
  return map([](double E, double F, double G, double L, double M, double N) { return (L * N - M * M) / (E * G - F * F); },
             f.g[0][0], f.g[0][1], f.g[1][1], f.b[0][0], f.b[0][1], f.b[1][1]);
}

Christoffel christoffel(const FormData& f) {
  const Grid2D& grid = f.grid();
  // dg[a][i][j] = d_a g_ij
  std::array<Sym2, 2> dg;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dg[a][i][j] = diff(f.g[i][j], axis_of(a));
  Christoffel gam;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) {
        ScalarField s(grid);
        for (int l = 0; l < 2; ++l)
          for (std::size_t n = 0; n < grid.size(); ++n)
            s[n] += 0.5 * f.ginv[k][l][n] * (dg[i][l][j][n] + dg[j][i][l][n] - dg[l][i][j][n]);
        gam[k][i][j] = s;
        gam[k][j][i] = s;
      }
  return gam;
}

Weingarten weingarten(const FormData& f) {
  const Grid2D& grid = f.grid();
  Weingarten w;
  for (int i = 0; i < 2; ++i) {
    w.p[i] = ScalarField(grid);
    w.q[i] = ScalarField(grid);
    for (std::size_t n = 0; n < grid.size(); ++n)
      for (int j = 0; j < 2; ++j) {
        w.p[i][n] -= f.b[0][j][n] * f.ginv[j][i][n];
        w.q[i][n] -= f.b[1][j][n] * f.ginv[j][i][n];
      }
  }
  if (f.has_patch) {
    const Vec3Field nx = diff(f.n, Axis::X), ny = diff(f.n, Axis::Y);
    for (std::size_t n = 0; n < grid.size(); ++n) {
      w.residual_x = std::max(w.residual_x, (nx[n] - w.p[0][n] * f.rx[n] - w.p[1][n] * f.ry[n]).cwiseAbs().maxCoeff());
      w.residual_y = std::max(w.residual_y, (ny[n] - w.q[0][n] * f.rx[n] - w.q[1][n] * f.ry[n]).cwiseAbs().maxCoeff());
    }
  }
  return w;
}

std::array<double, 3> gauss_formula_residuals(const FormData& f, const Christoffel& gam, int margin) {
  if (!f.has_patch) throw ParameterError("Gauss formulas need a position field");
  const Vec3Field rxx = diff(f.r, Axis::X, 2), ryy = diff(f.r, Axis::Y, 2), rxy = diff(f.rx, Axis::Y);
  const std::array<const Vec3Field*, 3> second{&rxx, &rxy, &ryy};
  const std::array<std::pair<int, int>, 3> ij{{{0, 0}, {0, 1}, {1, 1}}};
  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    const auto [i, j] = ij[c];
    Vec3Field r(f.grid());
    for (std::size_t n = 0; n < r.size(); ++n)
      r[n] = (*second[c])[n] - gam[0][i][j][n] * f.rx[n] - gam[1][i][j][n] * f.ry[n] - f.b[i][j][n] * f.n[n];
    out[c] = max_abs_interior(r, margin);
  }
  return out;
}

Riemann curvature_tensor(const FormData& f, const Christoffel& gam) {
  const Grid2D& grid = f.grid();
  // dgam[a][l][i][j] = d_a Gamma^l_ij
  std::array<Christoffel, 2> dgam;
  for (int a = 0; a < 2; ++a)
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) dgam[a][l][i][j] = diff(gam[l][i][j], axis_of(a));
  Riemann R;
  for (int l = 0; l < 2; ++l)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          ScalarField s(grid);
          for (std::size_t n = 0; n < grid.size(); ++n) {
            double v = dgam[k][l][i][j][n] - dgam[j][l][i][k][n];
            for (int m = 0; m < 2; ++m) v += gam[m][i][j][n] * gam[l][k][m][n] - gam[m][i][k][n] * gam[l][j][m][n];
            s[n] = v;
          }
          R[l][i][j][k] = s;
        }
  return R;
}

ScalarField gaussian_curvature_from_tensor(const FormData& f, const Riemann& R) {
  const Grid2D& grid = f.grid();
  ScalarField K(grid);
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const double det = f.g[0][0][n] * f.g[1][1][n] - f.g[0][1][n] * f.g[0][1][n];
    K[n] = -(f.g[0][0][n] * R[0][1][0][1][n] + f.g[0][1][n] * R[1][1][0][1][n]) / det;
  }
  return K;
}

MpcResidual mpc_residual(const FormData& f, int margin) {
  const Grid2D& grid = f.grid();
  const Christoffel gam = christoffel(f);
  const Riemann R = curvature_tensor(f, gam);
  // bu[l][k] = b^l_k = g^{lm} b_km
  std::array<std::array<ScalarField, 2>, 2> bu;
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k) {
      bu[l][k] = ScalarField(grid);
      for (std::size_t n = 0; n < grid.size(); ++n)
        for (int m = 0; m < 2; ++m) bu[l][k][n] += f.ginv[l][m][n] * f.b[k][m][n];
    }
  std::array<Sym2, 2> db;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) db[a][i][j] = diff(f.b[i][j], axis_of(a));

  MpcResidual out;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i) {
        ScalarField cp(grid), cs(grid);
        for (std::size_t n = 0; n < grid.size(); ++n) {
          const double d = db[k][i][j][n] - db[j][i][k][n];
          double vp = d, vs = d;
          for (int s = 0; s < 2; ++s) {
            vp += -gam[s][i][k][n] * f.b[i][s][n] + gam[s][i][j][n] * f.b[k][s][n];
            vs += -gam[s][i][k][n] * f.b[s][j][n] + gam[s][i][j][n] * f.b[s][k][n];
          }
          cp[n] = vp;
          cs[n] = vs;
        }
        out.codazzi_printed = std::max(out.codazzi_printed, max_abs_interior(cp, margin));
        out.codazzi_standard = std::max(out.codazzi_standard, max_abs_interior(cs, margin));
        for (int l = 0; l < 2; ++l) {
          ScalarField gs(grid);
          for (std::size_t n = 0; n < grid.size(); ++n)
            gs[n] = R[l][i][j][k][n] - (f.b[i][j][n] * bu[l][k][n] - f.b[i][k][n] * bu[l][j][n]);
          out.gauss = std::max(out.gauss, max_abs_interior(gs, margin));
        }
      }
  return out;
}

double surface_zero_curvature(const FormData& f, int margin) {
  const Grid2D& grid = f.grid();
  const Christoffel gam = christoffel(f);
  const Weingarten w = weingarten(f);
  using M3 = Eigen::Matrix3d;
  std::vector<M3> A(grid.size()), B(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    A[n] << gam[0][0][0][n], gam[1][0][0][n], f.b[0][0][n],
            gam[0][0][1][n], gam[1][0][1][n], f.b[0][1][n],
            w.p[0][n], w.p[1][n], 0.0;
    B[n] << gam[0][0][1][n], gam[1][0][1][n], f.b[0][1][n],
            gam[0][1][1][n], gam[1][1][1][n], f.b[1][1][n],
            w.q[0][n], w.q[1][n], 0.0;
  }
  // Differentiate entry by entry.
  std::vector<M3> Ay(grid.size()), Bx(grid.size());
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      ScalarField a(grid), b(grid);
      for (std::size_t n = 0; n < grid.size(); ++n) {
        a[n] = A[n](r, c);
        b[n] = B[n](r, c);
      }
      const ScalarField ay = diff(a, Axis::Y), bx = diff(b, Axis::X);
      for (std::size_t n = 0; n < grid.size(); ++n) {
        Ay[n](r, c) = ay[n];
        Bx[n](r, c) = bx[n];
      }
    }
  double m = 0.0;
  for (int j = margin; j < grid.ny - margin; ++j)
    for (int i = margin; i < grid.nx - margin; ++i) {
      const std::size_t n = grid.index(i, j);
      const M3 res = Ay[n] - Bx[n] + A[n] * B[n] - B[n] * A[n];
      m = std::max(m, res.cwiseAbs().maxCoeff());
    }
  return m;
}

Trihedral k_tau_from_surface(const FormData& f, TrihedralReading reading) {
  if (!f.has_patch) throw ParameterError("trihedral needs a position field");
  for (std::size_t n = 0; n < f.r.size(); ++n) {
    if (std::abs(f.g[0][0][n] - 1.0) > 1e-8 || std::abs(f.g[0][1][n]) > 1e-8)
      throw GaugeError("trihedral identification needs E = 1 and F = 0");
  }
  Trihedral t;
  t.e1 = map([](const Vec3& v, double E) -> Vec3 { return v / std::sqrt(E); }, f.rx, f.g[0][0]);
  t.e2 = f.n;
  t.e3 = map([](const Vec3& a, const Vec3& b) -> Vec3 { return a.cross(b); }, t.e1, t.e2);
  const double c = reading == TrihedralReading::Printed ? 0.5 : 1.0;
  t.k = c * f.b[0][0];
  t.tau = map([](double M, double G) { return M / std::sqrt(G); }, f.b[0][1], f.g[1][1]);
  return t;
}

std::pair<ScalarField, ScalarField> trihedral_k_tau(const Trihedral& t) {
  return {dot_field(diff(t.e1, Axis::X), t.e2), dot_field(diff(t.e2, Axis::X), t.e3)};
}

namespace surface {

Vec3Field plane(const Grid2D& g) {
  return sample(g, [](double x, double y) { return Vec3(x, y, 0.0); });
}

Vec3Field sphere(const Grid2D& g, double radius) {
  return sample(g, [&](double x, double y) {
    return Vec3(radius * std::sin(x) * std::cos(y), radius * std::sin(x) * std::sin(y), radius * std::cos(x));
  });
}

Vec3Field cylinder(const Grid2D& g, double radius) {
  return sample(g, [&](double x, double y) { return Vec3(radius * std::cos(x / radius), radius * std::sin(x / radius), y); });
}

Vec3Field torus(const Grid2D& g, double major, double minor) {
  return sample(g, [&](double x, double y) {
    const double rho = major + minor * std::cos(y);
    return Vec3(rho * std::cos(x), rho * std::sin(x), minor * std::sin(y));
  });
}

Vec3Field graph(const Grid2D& g, double amplitude, double width) {
  return sample(g, [&](double x, double y) {
    return Vec3(x, y, amplitude * std::exp(-(x * x + 0.5 * y * y) / (width * width)) * (1.0 + 0.2 * x));
  });
}

Vec3Field helical_cylinder(const Grid2D& g, double radius, double alpha) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  return sample(g, [&](double x, double y) {
    const double phi = (x * ca - y * sa) / radius;
    return Vec3(radius * std::cos(phi), radius * std::sin(phi), x * sa + y * ca);
  });
}

}  // namespace surface

}  // namespace spinlab
