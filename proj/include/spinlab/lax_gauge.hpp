#pragma once

#include <functional>

#include "spinlab/qsystem.hpp"
#include "spinlab/spin.hpp"

namespace spinlab {

// Phi_x = U Phi, Phi_t = 2 lambda^2 Phi_y + V Phi
struct LaxSample {
  cplx lambda;
  Mat2Field U, V;
};

struct SpinLaxParts {
  Mat2Field S, SSx, A, B, C;
};
// A = 1/4 [S,S_y] + (i/2) u S + (i/4) V1 S,  B = (i/2) V1 S,
// C = -c V1 S S_x + (i/2b)(S_xy - [S_x, A]) with c = 1/(4b) (Compatible) or
// 1/(4b^2) (Printed).
SpinLaxParts spin_lax_parts(const Vec3Field& S, double b, SpinReading reading = SpinReading::Compatible,
                            YDerivative ydir = YDerivative::Native);
// U = -i(l^2 - b^2) S + (l - b)/(2b) S S_x,  V = (l^2 - b^2)(2A + B) + (l - b) C
LaxSample lax_spin(const Vec3Field& S, double b, cplx lambda, SpinReading reading = SpinReading::Compatible,
                   YDerivative ydir = YDerivative::Native);
LaxSample assemble_spin_lax(const SpinLaxParts& parts, double b, cplx lambda, double b_sign = 1.0);

// The scalar B0 = V2/4 - (i/8) pq V1 multiplies sigma3 or the identity.
enum class B0Reading { Sigma3, Identity };

// U = -i(l^2 - pq/4) s3 + l Q,  V = l^2 B2 + l B1 + B0
// B2 = (i/2) V1 s3, B1 = i s3 Q_y - V1 Q / 2, Q = [[0, q], [-p, 0]], p = conj q
LaxSample lax_q(const CplxField& q, cplx lambda, B0Reading reading = B0Reading::Sigma3,
                YDerivative ydir = YDerivative::Native);

// U_t - 2 l^2 U_y - V_x + [U, V]
Mat2Field zero_curvature_field(const Mat2Field& U, const Mat2Field& Ut, const Mat2Field& V, cplx lambda);

template <class State>
using LaxBuilder = std::function<LaxSample(const State&, cplx)>;

// Residual at snapshot k, with U_t from central differences of the U
// snapshots. Needs at least 3 snapshots and 0 < k < size-1.
template <class State>
double zero_curvature_residual(const Trajectory<State>& traj, const LaxBuilder<State>& build, cplx lambda,
                               std::size_t k, int margin = 0) {
  if (traj.size() < 3) throw InsufficientDataError("zero-curvature residual needs at least 3 snapshots");
  if (k == 0 || k + 1 >= traj.size()) throw InsufficientDataError("snapshot has no neighbours on both sides");
  Trajectory<Mat2Field> us;
  const std::size_t lo = k >= 2 ? k - 2 : k - 1;
  const std::size_t hi = std::min(traj.size() - 1, k + 2);
  LaxSample mid;
  for (std::size_t s = lo; s <= hi; ++s) {
    LaxSample l = build(traj.states[s], lambda);
    us.push(traj.times[s], l.U);
    if (s == k) mid = std::move(l);
  }
  const Mat2Field Ut = time_derivative(us, k - lo);
  return max_abs_interior(zero_curvature_field(mid.U, Ut, mid.V, lambda), margin);
}

struct GaugeField {
  Mat2Field g;
  cplx lambda;  // spectral value the gauge was built at
};

// g_x = U_q(lambda) g along each y-line from g = I at the first x node, RK4
// in x. det g is renormalized to 1 after each step; InstabilityError if it
// had drifted by more than 1e-4.
GaugeField integrate_gauge(const CplxField& q, cplx lambda);
// One x-integration per snapshot.
std::vector<GaugeField> integrate_gauge(const Trajectory<CplxField>& traj, cplx lambda);

// f = exp(-(i/4) int |q|^2 dx s3)
GaugeField jost_gauge_factor(const CplxField& q);

// U' = f U f^-1 + f_x f^-1, V' = f V f^-1 + f_t f^-1 - 2 l^2 f_y f^-1
LaxSample gauge_transform_lax(const LaxSample& lax, const Mat2Field& f, const Mat2Field& f_t);
inline LaxSample gauge_transform_lax(const LaxSample& lax, const GaugeField& f) {
  return gauge_transform_lax(lax, f.g, Mat2Field(f.g.grid()));
}

// (U', V') of the second Jost function at snapshot k of an M-XXIIq run: the
// pair (20) conjugated by f of (24), f_t from the snapshots.
LaxSample lax_strachan_constructive(const Trajectory<CplxField>& q_traj, std::size_t k, cplx lambda,
                                    B0Reading reading = B0Reading::Sigma3);

// S = g^-1 (+-s3) g read back as a vector.
enum class ReconstructionSign { Plus, Minus };
Vec3Field reconstruct_spin(const GaugeField& g, ReconstructionSign sign = ReconstructionSign::Plus);
Vec3Field matrix_to_spin(const Mat2Field& M);

double max_det_deviation(const Mat2Field& g);

}  // namespace spinlab
