#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "spinlab/spin.hpp"

using namespace spinlab;
using std::numbers::pi;

namespace {

Grid2D square(int n, double L) { return Grid2D::spanning(n, n, -L, L, -L, L); }

// Adaptive Simpson on [a, b].
template <class F>
double simpson(F&& f, double a, double b, double tol, int depth = 30) {
  auto rec = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi, double whole, int d) -> double {
    const double m = 0.5 * (lo + hi), lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - m) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol) return left + right + (left + right - whole) / 15.0;
    return self(self, lo, m, flo, flm, fmid, left, d - 1) + self(self, m, hi, fmid, frm, fhi, right, d - 1);
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(rec, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), depth);
}

}  // namespace

TEST_CASE("solve_u trivial cases") {
  const Grid2D g = square(32, 3.0);
  CHECK(max_abs(solve_u(init::constant(g, Vec3(0.3, 0.4, 0.5)))) == 0.0);
  CHECK(max_abs(solve_u(init::helix(g, 0.4, 1.3))) < 1e-14);
}

TEST_CASE("solve_u of the lump") {
  const double w0 = 1.5, L = 6.0;
  // S.(S_x ^ S_y) = 4/(w0^2 (1+|w|^2)^2) for w = (x+iy)/w0.
  auto density = [&](double x, double y) {
    const double a = (x * x + y * y) / (w0 * w0);
    return 4.0 / (w0 * w0 * (1.0 + a) * (1.0 + a));
  };

  SUBCASE("u_x is minus the pointwise triple product") {
    const Grid2D g = square(256, L);
    const auto S = init::lump(g, w0);
    const auto ux = diff(solve_u(S), Axis::X);
    const auto Sx = diff(S, Axis::X), Sy = diff(S, Axis::Y);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(0, g.nx - 1);
    for (int s = 0; s < 10; ++s) {
      const int i = pick(rng), j = pick(rng);
      CHECK(std::abs(ux(i, j) + S(i, j).dot(Sx(i, j).cross(Sy(i, j)))) < 1e-6);
    }
  }

  SUBCASE("u converges to the line integral of the density") {
    auto err = [&](int n) {
      const Grid2D g = square(n, L);
      const auto u = solve_u(init::lump(g, w0));
      std::mt19937_64 rng(4);
      std::uniform_int_distribution<int> pick(0, 15);
      double e = 0.0;
      for (int s = 0; s < 10; ++s) {
        const int i = pick(rng) * n / 16, j = pick(rng) * n / 16;
        const double y = g.y(j);
        const double exact = -simpson([&](double x) { return density(x, y); }, g.x0, g.x(i), 1e-14);
        e = std::max(e, std::abs(u(i, j) - exact));
      }
      return e;
    };
    const double e1 = err(128), e2 = err(256);
    CHECK(e2 < 1e-4);
    CHECK(e1 / e2 > 12.0);
  }
}

TEST_CASE("solve_V1_spin") {
  const Grid2D g = square(64, 3.0);
  CHECK_THROWS_WITH_AS(solve_V1_spin(init::constant(g, Vec3(0, 0, 1)), 0.0), "parameter b must be nonzero",
                       ParameterError);
  CHECK(max_abs(solve_V1_spin(init::constant(g, Vec3(0, 0, 1)), 0.8)) == 0.0);
  CHECK(max_abs(solve_V1_spin(init::helix(g, 0.2, 2.0), 0.8)) < 1e-12);

  // S = (cos phi, sin phi, 0), phi = a(y) x: |S_x|^2 = a(y)^2.
  const double b = 0.9;
  auto a = [](double y) { return 1.0 + 0.3 * std::sin(y); };
  auto err = [&](int n) {
    const Grid2D gg = square(n, 3.0);
    const auto S = sample(gg, [&](double x, double y) { return Vec3(std::cos(a(y) * x), std::sin(a(y) * x), 0.0); });
    const auto exact = sample(gg, [&](double x, double y) {
      return (x - gg.x0) * 2.0 * a(y) * 0.3 * std::cos(y) / (4.0 * b * b);
    });
    return max_abs_diff(solve_V1_spin(S, b), exact);
  };
  const double e1 = err(64), e2 = err(128);
  CHECK(e2 < 1e-5);
  CHECK(e1 / e2 > 10.0);
}

TEST_CASE("spin_rhs fixed point and tangency") {
  const Grid2D g = square(48, 4.0);
  const SpinModel m{0.7};
  CHECK(max_abs(spin_rhs(init::constant(g, Vec3(0.6, 0.0, 0.8)), m)) == 0.0);
  const auto S = init::random_smooth(g, 0.8, 1.2, 99);
  const auto St = spin_rhs(S, m);
  double tang = 0.0;
  for (std::size_t k = 0; k < S.size(); ++k) tang = std::max(tang, std::abs(S[k].dot(St[k])));
  CHECK(tang < 1e-10);
  CHECK_THROWS_AS(spin_rhs(S, SpinModel{0.0}), ParameterError);
}

TEST_CASE("spin_rhs linearization about the north pole") {
  // psi = S1 + i S2 obeys psi_t = -i psi_xy + 2 b^2 psi_y, so a mode
  // exp(i(kx+ly)) grows at rate i(kl + 2 b^2 l).
  const double b = 0.7, eps = 1e-5;
  const Grid2D g = Grid2D::spanning(128, 128, 0.0, 2.0 * pi, 0.0, 2.0 * pi);
  for (auto [k, l] : {std::pair{1.0, 1.0}, std::pair{2.0, -1.0}, std::pair{1.0, 3.0}}) {
    const auto S = sample(g, [&](double x, double y) {
      const cplx psi = eps * std::exp(cplx(0.0, k * x + l * y));
      return Vec3(psi.real(), psi.imag(), 1.0).normalized();
    });
    const auto St = spin_rhs(S, SpinModel{b});
    const cplx rate(0.0, k * l + 2.0 * b * b * l);
    double worst = 0.0;
    for (int j = 8; j < g.ny - 8; j += 7)
      for (int i = 8; i < g.nx - 8; i += 7) {
        const cplx psi(S(i, j)[0], S(i, j)[1]);
        const cplx dpsi(St(i, j)[0], St(i, j)[1]);
        worst = std::max(worst, std::abs(dpsi / psi - rate) / std::abs(rate));
      }
    CHECK(worst < 1e-3);
  }
}

TEST_CASE("spin_rhs_1d") {
  const Grid2D g = Grid2D::spanning(1024, 16, 0.0, 2.0 * pi, 0.0, 1.0);
  CHECK(max_abs(spin_rhs_1d(init::constant(g, Vec3(0, 1, 0)), 0.5)) == 0.0);
  CHECK_THROWS_AS(spin_rhs_1d(init::random_smooth(Grid2D::spanning(32, 32, -2, 2, -2, 2), 0.3, 1.0, 1), 0.5),
                  ReductionError);

  SUBCASE("helix matches the term-by-term formula") {
    const double th = 0.3, k = 1.0, b = 0.8;
    const auto r = spin_rhs_1d(init::helix(g, th, k), b);
    const auto exact = sample(g, [&](double x, double) {
      const Vec3 s(std::cos(th) * std::cos(k * x), std::cos(th) * std::sin(k * x), std::sin(th));
      const Vec3 sx = k * std::cos(th) * Vec3(-std::sin(k * x), std::cos(k * x), 0.0);
      const Vec3 sxx = -k * k * std::cos(th) * Vec3(std::cos(k * x), std::sin(k * x), 0.0);
      const double q = sx.squaredNorm() / (4.0 * b * b);
      return Vec3(-(s.cross(sxx) + q * sx - 2.0 * b * b * sx));
    });
    // One-sided closures of the composed derivative are less accurate.
    CHECK(max_abs_interior(r - exact, 4) < 1e-8);
    CHECK(max_abs_diff(r, exact) < 1e-6);
  }

  SUBCASE("agrees with the 2+1 rhs under the reduction dictionary") {
    const Grid2D gl = Grid2D::spanning(2400, 16, -12.0, 12.0, 0.0, 1.0);
    const auto S = init::small_perturbation_1d(gl, 0.3, 1.5);
    const SpinModel m{0.7, SpinReading::Compatible, YDerivative::FromX};
    CHECK(max_abs_diff(spin_rhs_1d(S, 0.7), spin_rhs(S, m)) < 1e-10);
  }
}

TEST_CASE("spin_to_matrix") {
  const Grid2D g = square(16, 1.0);
  const auto north = spin_to_matrix(init::constant(g, Vec3(0, 0, 1)));
  CHECK(std::abs(north[0](0, 0) - 1.0) == 0.0);
  CHECK(std::abs(north[0](1, 1) + 1.0) == 0.0);
  CHECK(std::abs(north[0](0, 1)) == 0.0);
  const auto ex = spin_to_matrix(init::constant(g, Vec3(1, 0, 0)));
  CHECK(std::abs(ex[5](0, 1) - 1.0) == 0.0);
  CHECK(std::abs(ex[5](1, 0) - 1.0) == 0.0);

  const auto M = spin_to_matrix(init::random_smooth(g, 2.0, 0.5, 5));
  for (const auto& m : M.values()) {
    CHECK((m * m - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(m.trace()) < 1e-15);
    Eigen::SelfAdjointEigenSolver<Mat2> es(m);
    CHECK(std::abs(es.eigenvalues()[0] + 1.0) < 1e-12);
    CHECK(std::abs(es.eigenvalues()[1] - 1.0) < 1e-12);
  }
}

TEST_CASE("evolve_spin") {
  const Grid2D g = square(40, 5.0);
  const double h2 = g.dx * g.dy;
  const SpinModel m{0.7};

  SUBCASE("constant stays constant") {
    const auto run = evolve_spin(init::constant(g, Vec3(0, 0, 1)), m, {0.05, 0.1 * h2, 10});
    CHECK(max_abs_diff(run.traj.states.back(), run.traj.states.front()) == 0.0);
  }

  SUBCASE("unit norm and snapshot cadence") {
    const auto run = evolve_spin(init::small_perturbation(g, 0.3, 1.5), m, {0.02, 0.1 * h2, 5});
    for (const auto& s : run.traj.states) CHECK(max_norm_deviation(s) < 1e-10);
    CHECK(run.traj.times.front() == 0.0);
    CHECK(run.traj.times.back() == doctest::Approx(0.02).epsilon(1e-14));
  }

  SUBCASE("norm drift per step is fifth order in dt") {
    const auto S = init::small_perturbation(g, 0.4, 1.5);
    auto drift = [&](double dt) { return max_norm_deviation(rk4_step(S, [&](const Vec3Field& s) { return spin_rhs(s, m); }, dt)); };
    const double d1 = drift(0.1 * h2), d2 = drift(0.05 * h2);
    CHECK(d1 / d2 > 20.0);
  }

  SUBCASE("time convergence is fourth order") {
    const auto S = init::small_perturbation(g, 0.3, 1.5);
    const double T = 0.05;
    auto final = [&](double dt) { return evolve_spin(S, m, {T, dt, 1000000}).traj.states.back(); };
    const auto a = final(0.2 * h2), b = final(0.1 * h2), c = final(0.05 * h2);
    const double r = max_abs_diff(a, b) / max_abs_diff(b, c);
    CHECK(r > 12.0);
    CHECK(r < 20.0);
  }

  SUBCASE("blow-up guard") {
    CHECK_THROWS_AS(evolve_spin(init::random_smooth(g, 1.0, 1.0, 2), m, {1.0, 50.0 * h2, 1}), BlowUpError);
  }
}

TEST_CASE("y-uniform data under the reduction dictionary") {
  const Grid2D g = Grid2D::spanning(400, 16, -10.0, 10.0, 0.0, 1.0);
  const auto S0 = init::small_perturbation_1d(g, 0.3, 1.5);
  const SpinModel m{0.7, SpinReading::Compatible, YDerivative::FromX};
  const double dt = 0.1 * g.dx * g.dx;
  const auto full = evolve_spin(S0, m, {0.2, dt, 1000000});
  const auto red = evolve_spin(S0, m, {0.2, dt, 1000000}, true);
  const auto& Sf = full.traj.states.back();
  CHECK_NOTHROW(check_y_uniform(Sf, 1e-10));
  CHECK(max_abs_diff(Sf, red.traj.states.back()) < 1e-8);
  CHECK(max_abs_diff(Sf, S0) > 1e-3);
}
