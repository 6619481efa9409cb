#include "spinlab/curves.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace spinlab {

namespace {

Vec3 any_perpendicular(const Vec3& s) {
  const Vec3 trial = std::abs(s[0]) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return (trial - s.dot(trial) * s).normalized();
}

}  // namespace

FrameField frame_from_spin(const Vec3Field& S) {
  const Grid2D& g = S.grid();
  const Vec3Field Sx = diff(S, Axis::X);
  double kmax = 0.0;
  for (const auto& v : Sx.values()) kmax = std::max(kmax, v.norm());
  FrameField f{S, Vec3Field(g), Vec3Field(g), std::vector<std::uint8_t>(S.size(), 0), 0, 1e-8 * kmax};
  for (std::size_t n = 0; n < S.size(); ++n) {
    // Discrete S_x is tangent only to O(h^4); project before normalizing.
    const Vec3 t = Sx[n] - S[n].dot(Sx[n]) * S[n];
    const double k = t.norm();
    if (k > f.eps_k && k > 0.0) {
      f.e2[n] = t / k;
    } else {
      f.degenerate[n] = 1;
      ++f.degenerate_count;
    }
  }
  if (f.degenerate_count > 0) {
    for (int j = 0; j < g.ny; ++j) {
      int nearest_left = -1;
      std::vector<int> src(static_cast<std::size_t>(g.nx), -1);
      for (int i = 0; i < g.nx; ++i) {
        if (!f.degenerate[g.index(i, j)]) nearest_left = i;
        src[static_cast<std::size_t>(i)] = nearest_left;
      }
      int nearest_right = -1;
      for (int i = g.nx - 1; i >= 0; --i) {
        const std::size_t n = g.index(i, j);
        if (!f.degenerate[n]) {
          nearest_right = i;
          continue;
        }
        const int l = src[static_cast<std::size_t>(i)];
        int from = l;
        if (nearest_right >= 0 && (l < 0 || nearest_right - i < i - l)) from = nearest_right;
        const Vec3& s = S[n];
        if (from < 0) {
          f.e2[n] = any_perpendicular(s);
        } else {
          const Vec3 t = f.e2[g.index(from, j)];
          const Vec3 p = t - s.dot(t) * s;
          f.e2[n] = p.norm() > 1e-12 ? Vec3(p.normalized()) : any_perpendicular(s);
        }
      }
    }
  }
  for (std::size_t n = 0; n < S.size(); ++n) f.e3[n] = f.e1[n].cross(f.e2[n]);
  return f;
}

FrameDiagnostics frame_diagnostics(const FrameField& f) {
  FrameDiagnostics d;
  for (std::size_t n = 0; n < f.e1.size(); ++n) {
    const Vec3 &a = f.e1[n], &b = f.e2[n], &c = f.e3[n];
    const double o = std::max({std::abs(a.norm() - 1.0), std::abs(b.norm() - 1.0), std::abs(c.norm() - 1.0),
                               std::abs(a.dot(b)), std::abs(a.dot(c)), std::abs(b.dot(c)),
                               (c - a.cross(b)).cwiseAbs().maxCoeff()});
    d.orthonormality = std::max(d.orthonormality, o);
  }
  const Vec3Field e1x = diff(f.e1, Axis::X);
  for (std::size_t n = 0; n < f.e1.size(); ++n) {
    d.e1x_e1 = std::max(d.e1x_e1, std::abs(e1x[n].dot(f.e1[n])));
    d.e1x_e3 = std::max(d.e1x_e3, std::abs(e1x[n].dot(f.e3[n])));
  }
  return d;
}

CurvatureTorsion curvature_torsion(const FrameField& f) {
  const Vec3Field e1x = diff(f.e1, Axis::X);
  const Vec3Field e2x = diff(f.e2, Axis::X);
  return {map([](const Vec3& a, const Vec3& b) { return a.dot(b); }, e1x, f.e2),
          map([](const Vec3& a, const Vec3& b) { return a.dot(b); }, e2x, f.e3)};
}

MVector solve_m(const ScalarField& k, const ScalarField& tau) {
  check_grid(k.grid(), tau.grid());
  const Grid2D& g = k.grid();
  const ScalarField ky = diff(k, Axis::Y);
  const ScalarField ty = diff(tau, Axis::Y);
  MVector m{ScalarField(g), ScalarField(g), ScalarField(g)};
  const double h = g.dx;
  parallel_for(0, static_cast<std::size_t>(g.ny), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t jj = lo; jj < hi; ++jj) {
      const int j = static_cast<int>(jj);
      const auto K = k.row(j), T = tau.row(j), KY = ky.row(j), TY = ty.row(j);
      auto f = [](const Vec3& v, double kk, double tt, double kyy, double tyy) {
        return Vec3(tyy + kk * v[1], tt * v[2] - kk * v[0], kyy - tt * v[1]);
      };
      Vec3 v = Vec3::Zero();
      for (int i = 0; i + 1 < g.nx; ++i) {
        const double km = midpoint_value(K, i), tm = midpoint_value(T, i);
        const double kym = midpoint_value(KY, i), tym = midpoint_value(TY, i);
        const Vec3 s1 = f(v, K[i], T[i], KY[i], TY[i]);
        const Vec3 s2 = f(v + 0.5 * h * s1, km, tm, kym, tym);
        const Vec3 s3 = f(v + 0.5 * h * s2, km, tm, kym, tym);
        const Vec3 s4 = f(v + h * s3, K[i + 1], T[i + 1], KY[i + 1], TY[i + 1]);
        v += (h / 6.0) * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
        m.m1(i + 1, j) = v[0];
        m.m2(i + 1, j) = v[1];
        m.m3(i + 1, j) = v[2];
      }
    }
  }, 1);
  return m;
}

MVector frame_m(const FrameField& f) {
  const Vec3Field e1y = diff(f.e1, Axis::Y);
  const Vec3Field e2y = diff(f.e2, Axis::Y);
  auto dot = [](const Vec3& a, const Vec3& b) { return a.dot(b); };
  return {map(dot, e2y, f.e3), map([](const Vec3& a, const Vec3& b) { return -a.dot(b); }, e1y, f.e3),
          map(dot, e1y, f.e2)};
}

namespace {

Vec3Field pack(const ScalarField& a, const ScalarField& b, const ScalarField& c) {
  return map([](double x, double y, double z) { return Vec3(x, y, z); }, a, b, c);
}

Vec3Field c_vector(const CurvatureTorsion& kt) {
  return map([](double k, double t) { return Vec3(t, 0.0, k); }, kt.k, kt.tau);
}

double residual_norm(const Vec3Field& a_d, const Vec3Field& b_d, const Vec3Field& a, const Vec3Field& b, int margin) {
  const Vec3Field r = map([](const Vec3& p, const Vec3& q, const Vec3& x, const Vec3& y) -> Vec3 { return p - q - x.cross(y); },
                          a_d, b_d, a, b);
  return max_abs_interior(r, margin);
}

}  // namespace

double cd_residual(const CurvatureTorsion& kt, const MVector& m, int margin) {
  const Vec3Field c = c_vector(kt);
  const Vec3Field mv = pack(m.m1, m.m2, m.m3);
  return residual_norm(diff(c, Axis::Y), diff(mv, Axis::X), c, mv, margin);
}

Trajectory<FrameField> frames_of(const Trajectory<Vec3Field>& spins) {
  Trajectory<FrameField> out;
  for (std::size_t k = 0; k < spins.size(); ++k) out.push(spins.times[k], frame_from_spin(spins.states[k]));
  return out;
}

FrameResiduals frame_residuals(const Trajectory<FrameField>& traj, std::size_t k, int margin) {
  if (traj.size() < 3) throw InsufficientDataError("frame residuals need at least 3 snapshots");
  const std::size_t lo = k >= 2 ? k - 2 : 0;
  const std::size_t hi = std::min(traj.size() - 1, k + 2);
  Trajectory<Vec3Field> e1s, e2s, cs, ms;
  for (std::size_t s = lo; s <= hi; ++s) {
    const FrameField& f = traj.states[s];
    const CurvatureTorsion kt = curvature_torsion(f);
    const MVector m = solve_m(kt.k, kt.tau);
    e1s.push(traj.times[s], f.e1);
    e2s.push(traj.times[s], f.e2);
    cs.push(traj.times[s], c_vector(kt));
    ms.push(traj.times[s], pack(m.m1, m.m2, m.m3));
  }
  const std::size_t kk = k - lo;
  const FrameField& f = traj.states[k];
  const Vec3Field e1t = time_derivative(e1s, kk), e2t = time_derivative(e2s, kk);
  auto dot = [](const Vec3& a, const Vec3& b) { return a.dot(b); };
  const ScalarField w1 = map(dot, e2t, f.e3);
  const ScalarField w2 = map([](const Vec3& a, const Vec3& b) { return -a.dot(b); }, e1t, f.e3);
  const ScalarField w3 = map(dot, e1t, f.e2);
  const Vec3Field w = pack(w1, w2, w3);
  const Vec3Field& c = cs.states[kk];
  const Vec3Field& m = ms.states[kk];
  FrameResiduals r;
  r.cd = residual_norm(diff(c, Axis::Y), diff(m, Axis::X), c, m, margin);
  r.cg = residual_norm(time_derivative(cs, kk), diff(w, Axis::X), c, w, margin);
  r.dg = residual_norm(time_derivative(ms, kk), diff(w, Axis::Y), m, w, margin);
  return r;
}

CplxField lakshmanan_q(const ScalarField& k, const ScalarField& tau, double b, PhaseReading reading) {
  if (b == 0.0) throw ParameterError("parameter b must be nonzero");
  const double w = reading == PhaseReading::Compatible ? -8.0 : -4.0;
  const double ib2 = 1.0 / (b * b);
  const ScalarField phase = antideriv_x(map([&](double kk, double t) { return kk * kk * ib2 + w * t; }, k, tau));
  const Grid2D& g = k.grid();
  CplxField q(g);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i)
      q(i, j) = k(i, j) / (2.0 * b) * std::polar(1.0, phase(i, j) / 8.0 - 2.0 * b * b * g.x(i));
  return q;
}

CplxField lakshmanan_q(const Vec3Field& S, double b, PhaseReading reading) {
  const CurvatureTorsion kt = curvature_torsion(frame_from_spin(S));
  return lakshmanan_q(kt.k, kt.tau, b, reading);
}

}  // namespace spinlab
