#include "spinlab/qsystem.hpp"

#include <algorithm>
#include <cmath>

namespace spinlab {

namespace {

const cplx I(0.0, 1.0);

}  // namespace

QAux solve_aux_q(const CplxField& q, YDerivative ydir) {
  const CplxField p = conj(q);
  const ScalarField V1 = antideriv_x(diff_y(abs2(q), ydir));
  const CplxField qyx = diff(diff_y(q, ydir), Axis::X);
  const CplxField pyx = diff(diff_y(p, ydir), Axis::X);
  const CplxField src = map([](cplx a, cplx qq, cplx pp, cplx b) { return a * qq - pp * b; }, pyx, q, p, qyx);
  return {V1, antideriv_x(src)};
}

CplxField q_rhs(const CplxField& q, YDerivative ydir) {
  const auto [V1, V2] = solve_aux_q(q, ydir);
  const CplxField qy = diff_y(q, ydir);
  const CplxField qyx = diff(qy, Axis::X);
  const CplxField v1q_x = diff(map([](double v, cplx z) { return v * z; }, V1, q), Axis::X);
  return map(
      [](cplx qq, cplx a, cplx b, cplx v2, cplx y) {
        return I * a - 0.5 * (b - v2 * qq - std::norm(qq) * y);
      },
      q, qyx, v1q_x, V2, qy);
}

// i p_t - p_yx + (i/2)[(V1 p)_x + V2 p - q p p_y] = 0
CplxField p_rhs(const CplxField& q, const CplxField& p, YDerivative ydir) {
  const CplxField pq = map([](cplx a, cplx b) { return a * b; }, p, q);
  const CplxField V1 = antideriv_x(diff_y(pq, ydir));
  const CplxField qyx = diff(diff_y(q, ydir), Axis::X);
  const CplxField py = diff_y(p, ydir);
  const CplxField pyx = diff(py, Axis::X);
  const CplxField V2 = antideriv_x(map([](cplx a, cplx qq, cplx pp, cplx b) { return a * qq - pp * b; }, pyx, q, p, qyx));
  const CplxField v1p_x = diff(map([](cplx v, cplx z) { return v * z; }, V1, p), Axis::X);
  return map(
      [](cplx pp, cplx qp, cplx a, cplx b, cplx v2, cplx y) {
        return -I * a - 0.5 * (b + v2 * pp - qp * y);
      },
      p, pq, pyx, v1p_x, V2, py);
}

double conjugation_residual(const CplxField& q) { return max_abs_diff(p_rhs(q, conj(q)), conj(q_rhs(q))); }

double v2_real_part(const CplxField& q) { return max_abs(real_part(solve_aux_q(q).V2)); }

ScalarField solve_V_strachan(const CplxField& qp, YDerivative ydir) {
  return antideriv_x(diff_y(abs2(qp), ydir));
}

CplxField strachan_rhs(const CplxField& qp, YDerivative ydir) {
  const ScalarField V = solve_V_strachan(qp, ydir);
  const CplxField qxy = diff(diff_y(qp, ydir), Axis::X);
  const CplxField vq_x = diff(map([](double v, cplx z) { return v * z; }, V, qp), Axis::X);
  return map([](cplx a, cplx b) { return I * a - b; }, qxy, vq_x);
}

namespace {

void check_y_uniform(const CplxField& q) {
  double dev = 0.0;
  for (int j = 1; j < q.ny(); ++j)
    for (int i = 0; i < q.nx(); ++i) dev = std::max(dev, std::abs(q(i, j) - q(i, 0)));
  if (dev > 1e-12) throw ReductionError("field varies along y by " + std::to_string(dev));
}

template <class Kernel>
CplxField line_rhs(const CplxField& q, Kernel&& kernel) {
  check_y_uniform(q);
  const Grid2D& g = q.grid();
  const std::size_t n = static_cast<std::size_t>(g.nx);
  std::vector<cplx> f(q.row(0).begin(), q.row(0).end()), fx(n), fxx(n), out(n);
  diff_line<cplx>(f, g.dx, 1, fx);
  diff_line<cplx>(fx, g.dx, 1, fxx);
  kernel(f, fx, fxx, out, g.dx);
  CplxField r(g);
  for (int j = 0; j < g.ny; ++j) std::copy(out.begin(), out.end(), r.row(j).begin());
  return r;
}

}  // namespace

CplxField q_rhs_1d(const CplxField& q) {
  return line_rhs(q, [](const auto& f, const auto& fx, const auto& fxx, auto& out, double) {
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = I * fxx[i] - std::norm(f[i]) * fx[i];
  });
}

CplxField strachan_rhs_1d(const CplxField& q) {
  return line_rhs(q, [](const auto& f, const auto&, const auto& fxx, auto& out, double h) {
    const std::size_t n = f.size();
    std::vector<cplx> flux(n), dflux(n);
    for (std::size_t i = 0; i < n; ++i) flux[i] = std::norm(f[i]) * f[i];
    diff_line<cplx>(flux, h, 1, dflux);
    for (std::size_t i = 0; i < n; ++i) out[i] = I * fxx[i] - dflux[i];
  });
}

CplxField gauge_map_strachan(const CplxField& q) {
  const ScalarField phase = antideriv_x(abs2(q));
  return map([](cplx z, double a) { return z * std::polar(1.0, -0.5 * a); }, q, phase);
}

CplxField complex_rhs(QEquation eq, const CplxField& q, YDerivative ydir) {
  switch (eq) {
    case QEquation::MXXIIq: return q_rhs(q, ydir);
    case QEquation::Strachan: return strachan_rhs(q, ydir);
    case QEquation::MXXIIq1d: return q_rhs_1d(q);
    case QEquation::Strachan1d: return strachan_rhs_1d(q);
  }
  throw ParameterError("unknown equation");
}

Trajectory<CplxField> evolve_complex(QEquation eq, const CplxField& q0, const EvolveOptions& opt, YDerivative ydir) {
  const long steps = step_count(opt);
  const double dt = opt.t_end / static_cast<double>(steps);
  const double limit = 10.0 * max_abs(q0);
  auto rhs = [&](const CplxField& s) { return complex_rhs(eq, s, ydir); };
  Trajectory<CplxField> traj;
  CplxField q = q0;
  traj.push(0.0, q);
  for (long k = 0; k < steps; ++k) {
    q = rk4_step(q, rhs, dt, k);
    const double m = max_abs(q);
    if (m > limit && m > 0.0) throw BlowUpError("max |q| grew beyond 10x its initial value", k);
    if ((k + 1) % opt.snapshot_every == 0 || k + 1 == steps) traj.push(dt * static_cast<double>(k + 1), q);
  }
  return traj;
}

double trajectory_residual(QEquation eq, const Trajectory<CplxField>& traj, std::size_t k, YDerivative ydir,
                           int margin) {
  const CplxField qt = time_derivative(traj, k);
  return max_abs_interior(qt - complex_rhs(eq, traj.states[k], ydir), margin);
}

Trajectory<CplxField> map_trajectory(const Trajectory<CplxField>& traj, CplxField (*f)(const CplxField&)) {
  Trajectory<CplxField> out;
  for (std::size_t k = 0; k < traj.size(); ++k) out.push(traj.times[k], f(traj.states[k]));
  return out;
}

namespace init {

CplxField plane_wave(const Grid2D& g, cplx amplitude, double k, double l) {
  return sample(g, [&](double x, double y) { return amplitude * std::exp(I * (k * x + l * y)); });
}

CplxField flat_top_wave(const Grid2D& g, cplx amplitude, double k, double l, double W, bool y_flat) {
  return sample(g, [&](double x, double y) {
    const double ey = y_flat ? std::pow(y / W, 16) : 0.0;
    return amplitude * std::exp(-std::pow(x / W, 16) - ey) * std::exp(I * (k * x + l * y));
  });
}

CplxField gaussian_packet(const Grid2D& g, double amplitude, double width, double k, double l) {
  return sample(g, [&](double x, double y) {
    return amplitude * std::exp(-(x * x + y * y) / (width * width)) * std::exp(I * (k * x + l * y));
  });
}

CplxField gaussian_packet_1d(const Grid2D& g, double amplitude, double width, double k) {
  return sample(g, [&](double x, double) {
    return amplitude * std::exp(-x * x / (width * width)) * std::exp(I * (k * x));
  });
}

}  // namespace init

}  // namespace spinlab
