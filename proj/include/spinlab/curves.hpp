#pragma once

#include <cstdint>
#include <vector>

#include "spinlab/calculus.hpp"
#include "spinlab/rk4.hpp"

namespace spinlab {

struct FrameField {
  Vec3Field e1, e2, e3;
  std::vector<std::uint8_t> degenerate;  // 1 where |S_x| <= eps_k
  std::size_t degenerate_count = 0;
  double eps_k = 0.0;
};

// e1 = S, e2 = S_x/|S_x| (tangential part), e3 = e1 ^ e2. At nodes with |S_x| <= 1e-8 max|S_x|
// e2 is copied from the nearest regular node on the same x-line and
// re-orthogonalized.
FrameField frame_from_spin(const Vec3Field& S);

struct FrameDiagnostics {
  double orthonormality = 0.0;  // max of ||e_i|-1|, |e_i.e_j|, |e3 - e1^e2|
  double e1x_e1 = 0.0;
  double e1x_e3 = 0.0;
};
FrameDiagnostics frame_diagnostics(const FrameField& f);

struct CurvatureTorsion {
  ScalarField k, tau;
};
// k = e1_x.e2, tau = e2_x.e3
CurvatureTorsion curvature_torsion(const FrameField& f);

struct MVector {
  ScalarField m1, m2, m3;
};
// m1_x = tau_y + k m2, m2_x = tau m3 - k m1, m3_x = k_y - tau m2 per y-line,
// zero at x0, RK4 in x with midpoint values from cubic interpolation.
MVector solve_m(const ScalarField& k, const ScalarField& tau);
// m3 = e1_y.e2, m2 = -e1_y.e3, m1 = e2_y.e3 read off the frame.
MVector frame_m(const FrameField& f);

// C = X(tau, 0, k), D = X(m), G = X(omega) with X(a)_ij = eps_ijk a_k, so
// [X(a), X(b)] = -X(a^b) and the three compatibility conditions become
// c_y - m_x - c^m, c_t - w_x - c^w, m_t - w_y - m^w.
double cd_residual(const CurvatureTorsion& kt, const MVector& m, int margin = 0);

struct FrameResiduals {
  double cd = 0.0, cg = 0.0, dg = 0.0;
};
// Residuals at snapshot k of a frame trajectory, with omega_i from central
// time differences of the frames and m from solve_m.
FrameResiduals frame_residuals(const Trajectory<FrameField>& traj, std::size_t k, int margin = 0);
Trajectory<FrameField> frames_of(const Trajectory<Vec3Field>& spins);

// Weight of tau in the phase: Compatible uses -8 (phase (1/8) int(k^2/b^2 -
// 8 tau) - 2b^2 x); Printed uses -4.
enum class PhaseReading { Compatible, Printed };

// q = k/(2b) exp(i[(1/8) int (k^2/b^2 + w tau) dx - 2 b^2 x])
CplxField lakshmanan_q(const ScalarField& k, const ScalarField& tau, double b,
                       PhaseReading reading = PhaseReading::Compatible);
CplxField lakshmanan_q(const Vec3Field& S, double b, PhaseReading reading = PhaseReading::Compatible);

}  // namespace spinlab
