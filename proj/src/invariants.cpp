#include "spinlab/invariants.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "spinlab/rk4.hpp"

namespace spinlab {

CurvatureInvariants K_curv(const ScalarField& k, const ScalarField& tau, const ScalarField& m2) {
  check_grid(k.grid(), tau.grid());
  check_grid(k.grid(), m2.grid());
  const auto mul = [](double a, double b) { return a * b; };
  return {integrate(map(mul, k, m2)), integrate(map(mul, tau, m2))};
}

SpinInvariants K_spin(const Vec3Field& S, double eps) {
  const Vec3Field Sx = diff(S, Axis::X), Sy = diff(S, Axis::Y), Sxx = diff(S, Axis::X, 2);
  const double e52 = std::pow(eps, 2.5);
  ScalarField d1(S.grid()), d2(S.grid());
  for (std::size_t n = 0; n < S.size(); ++n) {
    const double a = S[n].dot(Sx[n].cross(Sy[n]));
    const double c = S[n].dot(Sx[n].cross(Sxx[n]));
    d1[n] = a;
    d2[n] = a * c / (std::pow(Sx[n].norm(), 2.5) + e52);
  }
  SpinInvariants out;
  out.K1 = integrate(d1);
  out.K2 = integrate(d2);
  out.G = out.K1 / (4.0 * std::numbers::pi);
  return out;
}

double K_lambda(std::span<const double> lambda, double dy) { return integrate_line(lambda, dy); }

std::vector<double> K_lambda(const std::vector<std::vector<double>>& slices, double dy) {
  std::vector<double> out;
  out.reserve(slices.size());
  for (const auto& s : slices) out.push_back(K_lambda(s, dy));
  return out;
}

double relative_drift(double k0, double k) {
  const double d = std::abs(k - k0);
  return std::abs(k0) < 1e-12 ? d : d / std::abs(k0);
}

InvariantReport invariant_report(const Trajectory<Vec3Field>& traj, double eps) {
  InvariantReport r;
  for (std::size_t s = 0; s < traj.size(); ++s) {
    const SpinInvariants v = K_spin(traj.states[s], eps);
    if (!std::isfinite(v.K1) || !std::isfinite(v.K2)) 
      throw BlowUpError("invariant is not finite at t = " + std::to_string(traj.times[s]), static_cast<long>(s));
    r.t.push_back(traj.times[s]);
    r.K1.push_back(v.K1);
    r.K2.push_back(v.K2);
    r.G.push_back(v.G);
    r.K1_drift.push_back(relative_drift(r.K1.front(), v.K1));
    r.K2_drift.push_back(relative_drift(r.K2.front(), v.K2));
    r.max_K1_drift = std::max(r.max_K1_drift, r.K1_drift.back());
    r.max_K2_drift = std::max(r.max_K2_drift, r.K2_drift.back());
  }
  return r;
}

void write_invariant_csv(std::ostream& os, const InvariantReport& r) {
  os << "t,K1,K2,G,K1_rel_drift,K2_rel_drift\n";
  const auto old = os.precision(17);
  for (std::size_t i = 0; i < r.t.size(); ++i)
    os << r.t[i] << ',' << r.K1[i] << ',' << r.K2[i] << ',' << r.G[i] << ',' << r.K1_drift[i] << ',' << r.K2_drift[i] << '\n';
  os.precision(old);
}

}  // namespace spinlab
