#include "spinlab/spin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

namespace spinlab {

void SpinModel::validate() const {
  if (b == 0.0 || !std::isfinite(b)) throw ParameterError("parameter b must be nonzero");
}

ScalarField solve_u(const Vec3Field& S, YDerivative ydir) {
  const Vec3Field Sx = diff(S, Axis::X);
  const Vec3Field Sy = diff_y(S, ydir);
  return antideriv_x(map([](const Vec3& s, const Vec3& a, const Vec3& c) { return -s.dot(a.cross(c)); }, S, Sx, Sy));
}

ScalarField solve_V1_spin(const Vec3Field& S, double b, YDerivative ydir) {
  if (b == 0.0) throw ParameterError("parameter b must be nonzero");
  const Vec3Field Sx = diff(S, Axis::X);
  const ScalarField sx2 = map([](const Vec3& v) { return v.squaredNorm(); }, Sx);
  return antideriv_x((1.0 / (4.0 * b * b)) * diff_y(sx2, ydir));
}

namespace {

Vec3Field project_tangent(const Vec3Field& S, const Vec3Field& X) {
  return map([](const Vec3& s, const Vec3& x) -> Vec3 { return x - s.dot(x) * s; }, S, X);
}

}  // namespace

// Matrix form translated with [A,B] <-> 2i a^b:
// S_t = -[(S^S_y + uS)_x + c V1 S_x - 2b^2 S_y].
Vec3Field spin_rhs(const Vec3Field& S, const SpinModel& model) {
  model.validate();
  const double b2 = model.b * model.b;
  const double c = model.v1_coefficient();
  const Vec3Field Sx = diff(S, Axis::X);
  const Vec3Field Sy = diff_y(S, model.ydir);
  const ScalarField u = solve_u(S, model.ydir);
  const ScalarField V1 = solve_V1_spin(S, model.b, model.ydir);
  const Vec3Field flux = map([](const Vec3& s, const Vec3& sy, double uu) -> Vec3 { return s.cross(sy) + uu * s; }, S, Sy, u);
  const Vec3Field dflux = diff(flux, Axis::X);
  const Vec3Field X = map(
      [&](const Vec3& df, double v1, const Vec3& sx, const Vec3& sy) -> Vec3 {
        return -(df + c * v1 * sx - 2.0 * b2 * sy);
      },
      dflux, V1, Sx, Sy);
  return project_tangent(S, X);
}

void check_y_uniform(const Vec3Field& S, double tol) {
  double dev = 0.0;
  for (int j = 1; j < S.ny(); ++j)
    for (int i = 0; i < S.nx(); ++i) dev = std::max(dev, (S(i, j) - S(i, 0)).cwiseAbs().maxCoeff());
  if (dev > tol) throw ReductionError("field varies along y by " + std::to_string(dev));
}

// S_t = -[S^S_xx + (c/4b^2)|S_x|^2 S_x - 2b^2 S_x], with S^S_xx in the
// conservative form (S^S_x)_x.
Vec3Field spin_rhs_1d(const Vec3Field& S, double b, SpinReading reading) {
  if (b == 0.0) throw ParameterError("parameter b must be nonzero");
  check_y_uniform(S);
  const Grid2D& g = S.grid();
  const double c = (reading == SpinReading::Compatible ? 1.0 : 0.5) / (4.0 * b * b);
  const int n = g.nx;
  std::vector<Vec3> s(S.row(0).begin(), S.row(0).end()), sx(n), cr(n), dcr(n), out(n);
  diff_line<Vec3>(s, g.dx, 1, sx);
  for (int i = 0; i < n; ++i) cr[i] = s[i].cross(sx[i]);
  diff_line<Vec3>(cr, g.dx, 1, dcr);
  for (int i = 0; i < n; ++i) {
    Vec3 x = -(dcr[i] + c * sx[i].squaredNorm() * sx[i] - 2.0 * b * b * sx[i]);
    out[i] = x - s[i].dot(x) * s[i];
  }
  Vec3Field r(g);
  for (int j = 0; j < g.ny; ++j) std::copy(out.begin(), out.end(), r.row(j).begin());
  return r;
}

Mat2Field spin_to_matrix(const Vec3Field& S) {
  return map(
      [](const Vec3& s) {
        Mat2 m;
        m << cplx(s[2], 0.0), cplx(s[0], -s[1]), cplx(s[0], s[1]), cplx(-s[2], 0.0);
        return m;
      },
      S);
}

double max_norm_deviation(const Vec3Field& S) {
  double m = 0.0;
  for (const auto& v : S.values()) m = std::max(m, std::abs(v.norm() - 1.0));
  return m;
}

long step_count(const EvolveOptions& opt) {
  if (!(opt.t_end > 0.0)) throw ParameterError("final time must be positive");
  if (!(opt.dt > 0.0)) throw ParameterError("time step must be positive");
  if (opt.snapshot_every < 1) throw ParameterError("snapshot cadence must be at least 1");
  return std::max(1L, static_cast<long>(std::ceil(opt.t_end / opt.dt - 1e-9)));
}

SpinRun evolve_spin(const Vec3Field& S0, const SpinModel& model, const EvolveOptions& opt, bool one_d) {
  model.validate();
  const long steps = step_count(opt);
  const double dt = opt.t_end / static_cast<double>(steps);
  auto rhs = [&](const Vec3Field& s) { return one_d ? spin_rhs_1d(s, model.b, model.reading) : spin_rhs(s, model); };

  SpinRun run;
  Vec3Field S = S0;
  run.traj.push(0.0, S);
  for (long k = 0; k < steps; ++k) {
    S = rk4_step(S, rhs, dt, k);
    const double drift = max_norm_deviation(S);
    run.max_norm_drift = std::max(run.max_norm_drift, drift);
    if (drift > 0.1) throw BlowUpError("spin norm drifted by " + std::to_string(drift), k);
    for (auto& v : S.values()) v.normalize();
    if ((k + 1) % opt.snapshot_every == 0 || k + 1 == steps) run.traj.push(dt * static_cast<double>(k + 1), S);
  }
  return run;
}

namespace init {

namespace {

Vec3 from_stereo(cplx w) {
  const double a = std::norm(w);
  if (!std::isfinite(a)) return Vec3(0.0, 0.0, -1.0);
  return Vec3(2.0 * w.real(), 2.0 * w.imag(), 1.0 - a) / (1.0 + a);
}

Vec3 tilt(double ex, double ey) { return Vec3(ex, ey, 1.0).normalized(); }

}  // namespace

Vec3Field constant(const Grid2D& g, const Vec3& s) { return Vec3Field(g, s.normalized()); }

Vec3Field lump(const Grid2D& g, double w0) {
  if (!(w0 > 0.0)) throw ParameterError("lump width must be positive");
  return sample(g, [&](double x, double y) { return from_stereo(cplx(x, y) / w0); });
}

Vec3Field compact_lump(const Grid2D& g, double w0, double R) {
  if (!(w0 > 0.0) || !(R > 0.0)) throw ParameterError("lump width must be positive");
  return sample(g, [&](double x, double y) {
    const double r2 = (x * x + y * y) / (R * R);
    return from_stereo(cplx(x, y) / w0 * std::exp(r2 * r2));
  });
}

Vec3Field helix(const Grid2D& g, double theta, double k) {
  return sample(g, [&](double x, double) {
    return Vec3(std::cos(theta) * std::cos(k * x), std::cos(theta) * std::sin(k * x), std::sin(theta));
  });
}

Vec3Field helix_perturbed(const Grid2D& g, double amplitude, double width, double k0, double th0) {
  return sample(g, [&](double x, double y) {
    const double env = amplitude * std::exp(-(x * x + y * y) / (width * width));
    const double th = th0 + env * (1.0 + 0.3 * y);
    const double ph = k0 * x + env * std::sin(y);
    return Vec3(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), std::sin(th));
  });
}

Vec3Field small_perturbation(const Grid2D& g, double amplitude, double width) {
  return sample(g, [&](double x, double y) {
    const double env = amplitude * std::exp(-(x * x + y * y) / (width * width));
    return tilt(env * std::cos(x), env * std::sin(0.5 * y + x));
  });
}

Vec3Field small_perturbation_1d(const Grid2D& g, double amplitude, double width) {
  return sample(g, [&](double x, double) {
    const double env = amplitude * std::exp(-x * x / (width * width));
    return tilt(env * std::cos(x), env * std::sin(x));
  });
}

Vec3Field random_smooth(const Grid2D& g, double amplitude, double width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double cx = 0.5 * (g.x0 + g.x_end()), cy = 0.5 * (g.y0 + g.y_end());
  const double hx = 0.25 * (g.x_end() - g.x0), hy = 0.25 * (g.y_end() - g.y0);
  struct Bump {
    double x, y, a1, a2;
  };
  std::vector<Bump> bumps(4);
  for (auto& bp : bumps) bp = {cx + hx * u(rng), cy + hy * u(rng), u(rng), u(rng)};
  return sample(g, [&](double x, double y) {
    double e1 = 0.0, e2 = 0.0;
    for (const auto& bp : bumps) {
      const double env = std::exp(-((x - bp.x) * (x - bp.x) + (y - bp.y) * (y - bp.y)) / (width * width));
      e1 += bp.a1 * env;
      e2 += bp.a2 * env;
    }
    return tilt(amplitude * e1, amplitude * e2);
  });
}

}  // namespace init

}  // namespace spinlab
