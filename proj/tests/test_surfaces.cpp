#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "spinlab/curves.hpp"
#include "spinlab/surfaces.hpp"

using namespace spinlab;
using std::numbers::pi;

namespace {

Grid2D sphere_grid(int n) { return Grid2D::spanning(n, n, 0.5, 2.5, 0.0, 2.0); }
Grid2D torus_grid(int n) { return Grid2D::spanning(n, n, 0.0, 2.0, -1.5, 1.5); }

// one-sided second differences are third order, so refinement checks look
// at the interior
constexpr int kMargin = 4;

double max_err(const ScalarField& f, auto exact, int margin = 0) {
  double m = 0.0;
  const Grid2D& g = f.grid();
  for (int j = margin; j < g.ny - margin; ++j)
    for (int i = margin; i < g.nx - margin; ++i) m = std::max(m, std::abs(f[g.index(i, j)] - exact(g.x(i), g.y(j))));
  return m;
}

// smooth incompatible perturbation of the second form
FormData perturbed(const FormData& f, double amp) {
  const Grid2D& g = f.grid();
  const auto d = sample(g, [&](double x, double y) { return amp * std::sin(3 * x) * std::cos(2 * y); });
  ScalarField L = f.b[0][0], M = f.b[0][1];
  for (std::size_t n = 0; n < g.size(); ++n) {
    L[n] += d[n];
    M[n] -= 0.5 * d[n];
  }
  return forms_from_coefficients(f.g[0][0], f.g[0][1], f.g[1][1], L, M, f.b[1][1]);
}

}  // namespace

TEST_CASE("fundamental forms") {
  SUBCASE("plane") {
    const auto f = fundamental_forms(surface::plane(Grid2D::spanning(16, 16, -1, 1, -1, 1)));
    CHECK(max_abs_diff(f.g[0][0], ScalarField(f.grid(), 1.0)) < 1e-13);
    CHECK(max_abs_diff(f.g[1][1], ScalarField(f.grid(), 1.0)) < 1e-13);
    CHECK(max_abs(f.g[0][1]) < 1e-13);
    for (auto* b : {&f.b[0][0], &f.b[0][1], &f.b[1][1]}) CHECK(max_abs(*b) == 0.0);
  }
  SUBCASE("unit sphere: b = -g and K = 1") {
    const auto f = fundamental_forms(surface::sphere(sphere_grid(256), 1.0));
    double dev = 0.0, nr = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dev = std::max(dev, max_abs_diff(f.b[i][j], -f.g[i][j]));
    for (std::size_t n = 0; n < f.r.size(); ++n) nr = std::max(nr, (f.n[n] - f.r[n]).norm());
    CHECK(dev < 1e-6);
    CHECK(nr < 1e-10);  // outward normal
    CHECK(max_err(gaussian_curvature(f), [](double, double) { return 1.0; }) < 1e-6);
  }
  SUBCASE("sphere curvature converges at fourth order") {
    const auto e = [](int n) {
      return max_err(gaussian_curvature(fundamental_forms(surface::sphere(sphere_grid(n), 1.0))), [](double, double) { return 1.0; });
    };
    CHECK(e(32) / e(64) > 12.0);
  }
  SUBCASE("cylinder principal curvatures") {
    const double R = 1.7;
    const auto f = fundamental_forms(surface::cylinder(Grid2D::spanning(64, 32, 0, 3, -1, 1), R));
    double worst = 0.0;
    for (std::size_t n = 0; n < f.r.size(); ++n) {
      Eigen::Matrix2d g, b;
      g << f.g[0][0][n], f.g[0][1][n], f.g[1][0][n], f.g[1][1][n];
      b << f.b[0][0][n], f.b[0][1][n], f.b[1][0][n], f.b[1][1][n];
      const Eigen::Matrix2d sh = g.inverse() * b;
      Eigen::Vector2d ev = sh.eigenvalues().real().cwiseAbs();
      if (ev(0) > ev(1)) std::swap(ev(0), ev(1));
      worst = std::max({worst, ev(0), std::abs(ev(1) - 1.0 / R)});
    }
    CHECK(worst < 1e-6);
  }
  SUBCASE("degenerate patch") {
    const auto r = sample(Grid2D::spanning(16, 16, 0, 1, 0, 1), [](double x, double) { return Vec3(x, 0, 0); });
    CHECK_THROWS_AS(fundamental_forms(r), ImmersionError);
  }
  SUBCASE("singular metric") {
    const Grid2D g = Grid2D::spanning(16, 16, 0, 1, 0, 1);
    const ScalarField one(g, 1.0), zero(g, 0.0);
    CHECK_THROWS_AS(forms_from_coefficients(one, one, one, zero, zero, zero), MetricError);
  }
}

TEST_CASE("christoffel symbols") {
  SUBCASE("plane") {
    const auto gam = christoffel(fundamental_forms(surface::plane(Grid2D::spanning(16, 16, -1, 1, -1, 1))));
    for (auto& a : gam)
      for (auto& b : a)
        for (auto& c : b) CHECK(max_abs(c) < 1e-12);
  }
  SUBCASE("sphere closed form") {
    const auto err = [](int n) {
      const auto gam = christoffel(fundamental_forms(surface::sphere(sphere_grid(n), 1.0)));
      double e = 0.0;
      e = std::max(e, max_err(gam[0][1][1], [](double x, double) { return -std::sin(x) * std::cos(x); }, kMargin));
      e = std::max(e, max_err(gam[1][0][1], [](double x, double) { return std::cos(x) / std::sin(x); }, kMargin));
      for (auto [k, i, j] : {std::array{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {1, 1, 1}})
        e = std::max(e, max_err(gam[k][i][j], [](double, double) { return 0.0; }, kMargin));
      // symmetric by construction
      for (int k = 0; k < 2; ++k) CHECK(max_abs_diff(gam[k][0][1], gam[k][1][0]) == 0.0);
      return e;
    };
    const double e1 = err(64), e2 = err(128);
    CHECK(e2 < 1e-6);
    CHECK(e1 / e2 > 12.0);
  }
}

TEST_CASE("weingarten and gauss formulas") {
  SUBCASE("plane") {
    const auto w = weingarten(fundamental_forms(surface::plane(Grid2D::spanning(16, 16, -1, 1, -1, 1))));
    for (int i = 0; i < 2; ++i) {
      CHECK(max_abs(w.p[i]) == 0.0);
      CHECK(max_abs(w.q[i]) == 0.0);
    }
  }
  SUBCASE("sphere residuals converge") {
    const auto res = [](int n) {
      const auto f = fundamental_forms(surface::sphere(sphere_grid(n), 1.0));
      const auto w = weingarten(f);
      const auto gr = gauss_formula_residuals(f, christoffel(f), kMargin);
      return std::max({w.residual_x, w.residual_y, gr[0], gr[1], gr[2]});
    };
    const double a = res(64), b = res(128);
    CHECK(b < 1e-5);
    CHECK(a / b > 7.0);  // weingarten residual is full-domain
  }
  SUBCASE("graph surface gauss formulas converge") {
    const auto res = [](int n) {
      const auto f = fundamental_forms(surface::graph(Grid2D::spanning(n, n, -2, 2, -2, 2), 0.6, 1.0));
      const auto w = weingarten(f);
      const auto gr = gauss_formula_residuals(f, christoffel(f), kMargin);
      return std::max({w.residual_x, w.residual_y, gr[0], gr[1], gr[2]});
    };
    CHECK(res(48) / res(96) > 7.0);
  }
}

TEST_CASE("curvature tensor") {
  SUBCASE("plane") {
    const auto f = fundamental_forms(surface::plane(Grid2D::spanning(16, 16, -1, 1, -1, 1)));
    const auto R = curvature_tensor(f, christoffel(f));
    for (auto& a : R)
      for (auto& b : a)
        for (auto& c : b)
          for (auto& d : c) CHECK(max_abs(d) < 1e-12);
  }
  SUBCASE("sphere: theorema egregium and antisymmetry") {
    const auto f = fundamental_forms(surface::sphere(sphere_grid(128), 1.0));
    const auto R = curvature_tensor(f, christoffel(f));
    CHECK(max_err(gaussian_curvature_from_tensor(f, R), [](double, double) { return 1.0; }) < 1e-4);
    CHECK(max_err(gaussian_curvature_from_tensor(f, R), [](double, double) { return 1.0; }, kMargin) < 1e-5);
    double anti = 0.0;
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (std::size_t n = 0; n < f.r.size(); ++n) anti = std::max(anti, std::abs(R[l][i][j][k][n] + R[l][i][k][j][n]));
    CHECK(anti == 0.0);
  }
  SUBCASE("torus intrinsic curvature") {
    const double a = 0.6, c = 2.0;
    const auto f = fundamental_forms(surface::torus(torus_grid(128), c, a));
    const auto R = curvature_tensor(f, christoffel(f));
    const auto K = [&](double, double y) { return std::cos(y) / (a * (c + a * std::cos(y))); };
    CHECK(max_err(gaussian_curvature_from_tensor(f, R), K, kMargin) < 1e-5);
    CHECK(max_err(gaussian_curvature(f), K) < 1e-5);
  }
}

TEST_CASE("mpc residuals") {
  SUBCASE("plane") {
    const auto m = mpc_residual(fundamental_forms(surface::plane(Grid2D::spanning(16, 16, -1, 1, -1, 1))));
    CHECK(m.gauss < 1e-12);
    CHECK(m.codazzi() < 1e-12);
  }
  SUBCASE("torus converges, standard indices") {
    const auto res = [&](int n) { return mpc_residual(fundamental_forms(surface::torus(torus_grid(n), 2.0, 0.6)), kMargin); };
    const auto a = res(32), b = res(64);
    CHECK(b.gauss < 1e-5);
    CHECK(b.codazzi() < 2e-6);
    CHECK(a.gauss / b.gauss > 14.0);
    CHECK(a.codazzi() / b.codazzi() > 14.0);
  }
  SUBCASE("sphere converges, standard indices") {
    // b = -g makes Codazzi hold to round-off
    const auto res = [&](int n) { return mpc_residual(fundamental_forms(surface::sphere(sphere_grid(n), 1.0)), kMargin); };
    const auto a = res(128), b = res(256);
    CHECK(b.gauss < 1e-6);
    CHECK(b.codazzi() < 1e-8);
    CHECK(a.gauss / b.gauss > 10.0);
  }
  SUBCASE("printed indices do not vanish on the sphere") {
    const auto a = mpc_residual(fundamental_forms(surface::sphere(sphere_grid(32), 1.0)));
    const auto b = mpc_residual(fundamental_forms(surface::sphere(sphere_grid(64), 1.0)));
    // the analytic defect is sin(x) cos(x) in one component
    CHECK(b.codazzi_printed > 0.4);
    CHECK(std::abs(a.codazzi_printed - b.codazzi_printed) < 1e-3);
  }
  SUBCASE("incompatible data is an O(1) negative control") {
    const auto c32 = mpc_residual(perturbed(fundamental_forms(surface::sphere(sphere_grid(32), 1.0)), 0.1));
    const auto c64 = mpc_residual(perturbed(fundamental_forms(surface::sphere(sphere_grid(64), 1.0)), 0.1));
    CHECK(c64.codazzi() > 0.1);
    CHECK(c64.codazzi() > 0.9 * c32.codazzi());
  }
}

TEST_CASE("zero-curvature form") {
  SUBCASE("plane") {
    CHECK(surface_zero_curvature(fundamental_forms(surface::plane(Grid2D::spanning(16, 16, -1, 1, -1, 1)))) < 1e-12);
  }
  SUBCASE("sphere converges") {
    const double a = surface_zero_curvature(fundamental_forms(surface::sphere(sphere_grid(128), 1.0)), kMargin);
    const double b = surface_zero_curvature(fundamental_forms(surface::sphere(sphere_grid(256), 1.0)), kMargin);
    CHECK(b < 1e-6);
    CHECK(a / b > 10.0);
  }
  SUBCASE("agrees with mpc on 20 patches") {
    std::vector<FormData> good;
    for (double R : {0.8, 1.0, 1.5}) good.push_back(fundamental_forms(surface::sphere(sphere_grid(64), R)));
    for (double a : {0.4, 0.7}) good.push_back(fundamental_forms(surface::torus(torus_grid(64), 2.0, a)));
    for (double A : {0.3, 0.8}) good.push_back(fundamental_forms(surface::graph(Grid2D::spanning(64, 64, -2, 2, -2, 2), A, 1.2)));
    good.push_back(fundamental_forms(surface::cylinder(Grid2D::spanning(64, 64, 0, 3, -1, 1), 1.3)));
    for (double al : {0.3, 0.9}) good.push_back(fundamental_forms(surface::helical_cylinder(Grid2D::spanning(64, 64, -1, 1, -1, 1), 1.1, al)));
    int agree = 0;
    for (std::size_t s = 0; s < good.size(); ++s) {
      const double zc0 = surface_zero_curvature(good[s], kMargin);
      const auto m0 = mpc_residual(good[s], kMargin);
      const auto bad = perturbed(good[s], 0.05 + 0.02 * static_cast<double>(s));
      const double zc1 = surface_zero_curvature(bad, kMargin);
      const auto m1 = mpc_residual(bad, kMargin);
      const bool g0 = zc0 < 1e-3, g1 = std::max(m0.gauss, m0.codazzi()) < 1e-3;
      const bool b0 = zc1 < 1e-3, b1 = std::max(m1.gauss, m1.codazzi()) < 1e-3;
      agree += (g0 == g1 && g0) + (b0 == b1 && !b0);
    }
    CHECK(agree == 20);
  }
}

TEST_CASE("k and tau from the surface") {
  SUBCASE("plane") {
    const auto t = k_tau_from_surface(fundamental_forms(surface::plane(Grid2D::spanning(16, 16, -1, 1, -1, 1))));
    CHECK(max_abs(t.k) == 0.0);
    CHECK(max_abs(t.tau) == 0.0);
  }
  SUBCASE("cylinder: printed k = L/2") {
    const double R = 1.5;
    const auto f = fundamental_forms(surface::cylinder(Grid2D::spanning(256, 16, 0, 3, -1, 1), R));
    const auto t = k_tau_from_surface(f, TrihedralReading::Printed);
    CHECK(max_err(t.k, [&](double, double) { return -0.5 / R; }) < 1e-7);
    CHECK(max_abs(t.tau) < 1e-8);
  }
  SUBCASE("gauge precondition") {
    CHECK_THROWS_AS(k_tau_from_surface(fundamental_forms(surface::torus(torus_grid(16), 2.0, 0.6))), GaugeError);
  }
  SUBCASE("trihedral is orthonormal and e1_x . e2 = L") {
    const auto f = fundamental_forms(surface::helical_cylinder(Grid2D::spanning(256, 128, -2, 2, -1, 1), 1.2, 0.5));
    const auto t = k_tau_from_surface(f, TrihedralReading::Geodesic);
    const auto [k, tau] = trihedral_k_tau(t);
    CHECK(max_abs_interior(k - t.k, 2) < 1e-6);
    CHECK(max_abs_interior(tau - t.tau, 2) < 1e-6);
  }
  SUBCASE("cross-approach against the curve frame") {
    // S = r_x on a cylinder with helical x-lines; the curve normal is -n
    const double R = 1.2, al = 0.5, ca = std::cos(al), sa = std::sin(al);
    const Grid2D g = Grid2D::spanning(256, 128, -2, 2, -1, 1);
    const auto f = fundamental_forms(surface::helical_cylinder(g, R, al));
    const auto S = sample(g, [&](double x, double y) {
      const double phi = (x * ca - y * sa) / R;
      return Vec3(-ca * std::sin(phi), ca * std::cos(phi), sa);
    });
    const auto ct = curvature_torsion(frame_from_spin(S));
    const double k0 = ca * ca / R, t0 = sa * ca / R;
    CHECK(max_err(ct.k, [&](double, double) { return k0; }) / k0 < 1e-6);
    const auto rel = [&](TrihedralReading rd) {
      const auto t = k_tau_from_surface(f, rd);
      double e = 0.0;
      for (std::size_t n = 0; n < g.size(); ++n)
        e = std::max({e, std::abs(std::abs(t.k[n]) - ct.k[n]) / k0, std::abs(t.tau[n] - ct.tau[n]) / t0});
      return e;
    };
    CHECK(rel(TrihedralReading::Geodesic) < 1e-6);
    CHECK(rel(TrihedralReading::Printed) > 0.4);
  }
}
