#include "spinlab/lax_gauge.hpp"

#include <cmath>

#include "spinlab/parallel.hpp"

namespace spinlab {

namespace {

const cplx I(0.0, 1.0);

Mat2 sigma3() {
  Mat2 s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

Mat2Field scale(const ScalarField& a, const Mat2Field& M) {
  return map([](double s, const Mat2& m) -> Mat2 { return s * m; }, a, M);
}

Mat2Field product(const Mat2Field& a, const Mat2Field& b) {
  return map([](const Mat2& x, const Mat2& y) -> Mat2 { return x * y; }, a, b);
}

Mat2Field commutator(const Mat2Field& a, const Mat2Field& b) {
  return map([](const Mat2& x, const Mat2& y) -> Mat2 { return x * y - y * x; }, a, b);
}

Mat2Field inverse(const Mat2Field& a) {
  return map([](const Mat2& x) -> Mat2 {
    const cplx d = x.determinant();
    if (std::abs(d) < 1e-12) throw GaugeError("gauge matrix is singular");
    return x.inverse();
  }, a);
}

Mat2Field q_matrix(const CplxField& q) {
  return map([](cplx v) -> Mat2 {
    Mat2 m;
    m << 0.0, v, -std::conj(v), 0.0;
    return m;
  }, q);
}

}  // namespace

Vec3Field matrix_to_spin(const Mat2Field& M) {
  return map([](const Mat2& m) { return Vec3(m(1, 0).real(), m(1, 0).imag(), m(0, 0).real()); }, M);
}

SpinLaxParts spin_lax_parts(const Vec3Field& S, double b, SpinReading reading, YDerivative ydir) {
  SpinModel{b, reading, ydir}.validate();
  const SpinAux aux = solve_spin_aux(S, b, ydir);
  SpinLaxParts p;
  p.S = spin_to_matrix(S);
  const Mat2Field Sx = diff(p.S, Axis::X);
  const Mat2Field Sy = diff_y(p.S, ydir);
  const Mat2Field Sxy = diff_y(Sx, ydir);
  p.SSx = product(p.S, Sx);
  p.A = 0.25 * commutator(p.S, Sy) + map([](double u, double v1, const Mat2& s) -> Mat2 {
    return (0.5 * I * u + 0.25 * I * v1) * s;
  }, aux.u, aux.V1, p.S);
  p.B = scale(aux.V1, p.S);
  p.B = (0.5 * I) * p.B;
  const double c = reading == SpinReading::Compatible ? 1.0 / (4.0 * b) : 1.0 / (4.0 * b * b);
  p.C = -c * scale(aux.V1, p.SSx) + (I / (2.0 * b)) * (Sxy - commutator(Sx, p.A));
  return p;
}

LaxSample assemble_spin_lax(const SpinLaxParts& p, double b, cplx lambda, double b_sign) {
  const cplx a2 = lambda * lambda - b * b;
  const cplx a1 = lambda - b;
  LaxSample l;
  l.lambda = lambda;
  l.U = (-I * a2) * p.S + (a1 / (2.0 * b)) * p.SSx;
  l.V = a2 * (2.0 * p.A + b_sign * p.B) + a1 * p.C;
  return l;
}

LaxSample lax_spin(const Vec3Field& S, double b, cplx lambda, SpinReading reading, YDerivative ydir) {
  return assemble_spin_lax(spin_lax_parts(S, b, reading, ydir), b, lambda);
}

LaxSample lax_q(const CplxField& q, cplx lambda, B0Reading reading, YDerivative ydir) {
  const QAux aux = solve_aux_q(q, ydir);
  const Mat2Field Q = q_matrix(q);
  const Mat2Field Qy = diff_y(Q, ydir);
  const Mat2 s3 = sigma3();
  const Mat2 b0_unit = reading == B0Reading::Sigma3 ? s3 : Mat2::Identity();
  LaxSample l;
  l.lambda = lambda;
  l.U = map([&](cplx v, const Mat2& Qm) -> Mat2 {
    return -I * (lambda * lambda - 0.25 * std::norm(v)) * s3 + lambda * Qm;
  }, q, Q);
  const Grid2D& g = q.grid();
  l.V = Mat2Field(g);
  for (std::size_t n = 0; n < g.size(); ++n) {
    const double v1 = aux.V1[n];
    const Mat2 B2 = 0.5 * I * v1 * s3;
    const Mat2 B1 = I * s3 * Qy[n] - 0.5 * v1 * Q[n];
    const cplx b0 = 0.25 * aux.V2[n] - (I / 8.0) * std::norm(q[n]) * v1;
    l.V[n] = lambda * lambda * B2 + lambda * B1 + b0 * b0_unit;
  }
  return l;
}

Mat2Field zero_curvature_field(const Mat2Field& U, const Mat2Field& Ut, const Mat2Field& V, cplx lambda) {
  const Mat2Field Uy = diff(U, Axis::Y);
  const Mat2Field Vx = diff(V, Axis::X);
  Mat2Field r(U.grid());
  for (std::size_t n = 0; n < r.size(); ++n)
    r[n] = Ut[n] - 2.0 * lambda * lambda * Uy[n] - Vx[n] + U[n] * V[n] - V[n] * U[n];
  return r;
}

GaugeField integrate_gauge(const CplxField& q, cplx lambda) {
  const Grid2D& g = q.grid();
  const Mat2Field U = lax_q(q, lambda).U;
  GaugeField out{Mat2Field(g), lambda};
  const double h = g.dx;
  parallel_for(0, static_cast<std::size_t>(g.ny), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t jj = lo; jj < hi; ++jj) {
      const int j = static_cast<int>(jj);
      const auto Ur = U.row(j);
      auto G = out.g.row(j);
      Mat2 m = Mat2::Identity();
      G[0] = m;
      for (int i = 0; i + 1 < g.nx; ++i) {
        const Mat2 um = midpoint_value(Ur, i);
        const Mat2 k1 = Ur[i] * m;
        const Mat2 k2 = um * (m + 0.5 * h * k1);
        const Mat2 k3 = um * (m + 0.5 * h * k2);
        const Mat2 k4 = Ur[i + 1] * (m + h * k3);
        m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const cplx d = m.determinant();
        if (!std::isfinite(std::abs(d)) || std::abs(d - 1.0) > 1e-4)
          throw InstabilityError("gauge determinant drifted by " + std::to_string(std::abs(d - 1.0)));
        m /= std::sqrt(d);
        G[i + 1] = m;
      }
    }
  }, 1);
  return out;
}

std::vector<GaugeField> integrate_gauge(const Trajectory<CplxField>& traj, cplx lambda) {
  std::vector<GaugeField> out;
  out.reserve(traj.size());
  for (const auto& q : traj.states) out.push_back(integrate_gauge(q, lambda));
  return out;
}

GaugeField jost_gauge_factor(const CplxField& q) {
  const ScalarField phi = 0.25 * antideriv_x(abs2(q));
  GaugeField f{Mat2Field(q.grid()), cplx(0.0)};
  for (std::size_t n = 0; n < q.size(); ++n) {
    Mat2 m = Mat2::Zero();
    m(0, 0) = std::polar(1.0, -phi[n]);
    m(1, 1) = std::polar(1.0, phi[n]);
    f.g[n] = m;
  }
  return f;
}

LaxSample gauge_transform_lax(const LaxSample& lax, const Mat2Field& f, const Mat2Field& f_t) {
  check_grid(lax.U.grid(), f.grid());
  check_grid(f.grid(), f_t.grid());
  const Mat2Field fi = inverse(f);
  const Mat2Field fx = diff(f, Axis::X), fy = diff(f, Axis::Y);
  LaxSample out{lax.lambda, Mat2Field(f.grid()), Mat2Field(f.grid())};
  const cplx l2 = lax.lambda * lax.lambda;
  for (std::size_t n = 0; n < f.size(); ++n) {
    out.U[n] = f[n] * lax.U[n] * fi[n] + fx[n] * fi[n];
    out.V[n] = f[n] * lax.V[n] * fi[n] + f_t[n] * fi[n] - 2.0 * l2 * fy[n] * fi[n];
  }
  return out;
}

LaxSample lax_strachan_constructive(const Trajectory<CplxField>& q_traj, std::size_t k, cplx lambda,
                                    B0Reading reading) {
  Trajectory<Mat2Field> fs;
  for (std::size_t s = 0; s < q_traj.size(); ++s) fs.push(q_traj.times[s], jost_gauge_factor(q_traj.states[s]).g);
  const Mat2Field ft = time_derivative(fs, k);
  return gauge_transform_lax(lax_q(q_traj.states[k], lambda, reading), fs.states[k], ft);
}

Vec3Field reconstruct_spin(const GaugeField& g, ReconstructionSign sign) {
  const Mat2 s3 = (sign == ReconstructionSign::Plus ? 1.0 : -1.0) * sigma3();
  return matrix_to_spin(map([&](const Mat2& m) -> Mat2 { return m.inverse() * s3 * m; }, g.g));
}

double max_det_deviation(const Mat2Field& g) {
  double m = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) m = std::max(m, std::abs(g[n].determinant() - 1.0));
  return m;
}

}  // namespace spinlab
