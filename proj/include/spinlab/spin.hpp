#pragma once

#include <cstdint>

#include "spinlab/calculus.hpp"
#include "spinlab/rk4.hpp"

namespace spinlab {

// Coefficient of the V1*S_x term. Compatible (1) is the value for which the
// spin Lax pair closes; Printed (1/2) is kept for comparison.
enum class SpinReading { Compatible, Printed };

struct SpinModel {
  double b = 1.0;
  SpinReading reading = SpinReading::Compatible;
  YDerivative ydir = YDerivative::Native;

  double v1_coefficient() const { return reading == SpinReading::Compatible ? 1.0 : 0.5; }
  void validate() const;
};

struct SpinAux {
  ScalarField u;
  ScalarField V1;
};

ScalarField solve_u(const Vec3Field& S, YDerivative ydir = YDerivative::Native);
ScalarField solve_V1_spin(const Vec3Field& S, double b, YDerivative ydir = YDerivative::Native);
inline SpinAux solve_spin_aux(const Vec3Field& S, double b, YDerivative ydir = YDerivative::Native) {
  return {solve_u(S, ydir), solve_V1_spin(S, b, ydir)};
}

// S_t of the 2+1 spin equation, projected onto the tangent plane of S.
Vec3Field spin_rhs(const Vec3Field& S, const SpinModel& model);

// S_t of the 1+1 reduction for y-uniform S. Throws ReductionError if S varies
// along y by more than 1e-12.
Vec3Field spin_rhs_1d(const Vec3Field& S, double b, SpinReading reading = SpinReading::Compatible);

Mat2Field spin_to_matrix(const Vec3Field& S);

double max_norm_deviation(const Vec3Field& S);
void check_y_uniform(const Vec3Field& S, double tol = 1e-12);

struct EvolveOptions {
  double t_end = 0.0;
  double dt = 0.0;
  int snapshot_every = 1;
};

// Number of RK4 steps so that steps * dt' = t_end with dt' <= dt.
long step_count(const EvolveOptions& opt);

struct SpinRun {
  Trajectory<Vec3Field> traj;
  double max_norm_drift = 0.0;  // largest ||S|-1| seen before renormalization
};

// RK4 march with S <- S/|S| after each step. When `one_d` is set the 1+1
// kernel is used instead of the 2+1 one.
SpinRun evolve_spin(const Vec3Field& S0, const SpinModel& model, const EvolveOptions& opt,
                    bool one_d = false);

namespace init {

Vec3Field constant(const Grid2D& g, const Vec3& s);
// Stereographic degree-1 lump w = (x + iy) / w0; S -> (0,0,-1) far away.
Vec3Field lump(const Grid2D& g, double w0);
// Lump with w = (x + iy)/w0 * exp((r/R)^4): same degree, but reaches the
// south pole to round-off well inside a box of half-width ~2.5 R.
Vec3Field compact_lump(const Grid2D& g, double w0, double R);
// (cos th cos kx, cos th sin kx, sin th), uniform in y.
Vec3Field helix(const Grid2D& g, double theta, double k);
// Helix (cos th cos ph, cos th sin ph, sin th) with th = th0 + a env (1 + 0.3y)
// and ph = k0 x + a env sin y, env a Gaussian; |S_x| stays away from zero.
Vec3Field helix_perturbed(const Grid2D& g, double amplitude, double width, double k0, double th0);
// Localized tilt of S = (0,0,1) with Gaussian envelope.
Vec3Field small_perturbation(const Grid2D& g, double amplitude, double width);
// y-uniform localized tilt, for the 1+1 reduction.
Vec3Field small_perturbation_1d(const Grid2D& g, double amplitude, double width);
// Sum of a few Gaussian bumps with random coefficients from a fixed seed.
Vec3Field random_smooth(const Grid2D& g, double amplitude, double width, std::uint64_t seed);

}  // namespace init

}  // namespace spinlab
