#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "spinlab/calculus.hpp"
#include "spinlab/rk4.hpp"

namespace spinlab {

struct CurvatureInvariants {
  double K1 = 0.0;  // int k m2
  double K2 = 0.0;  // int tau m2
};
CurvatureInvariants K_curv(const ScalarField& k, const ScalarField& tau, const ScalarField& m2);

struct SpinInvariants {
  double K1 = 0.0;  // int S.(S_x ^ S_y)
  double K2 = 0.0;
  double G = 0.0;   // K1 / 4 pi
};
// K2 integrand [S.(S_x^S_y)][S.(S_x^S_xx)] / |S_x|^(5/2), with the
// denominator replaced by |S_x|^(5/2) + eps^(5/2).
constexpr double kK2Epsilon = 1e-6;
SpinInvariants K_spin(const Vec3Field& S, double eps = kK2Epsilon);

// int lambda dy for one time slice.
double K_lambda(std::span<const double> lambda, double dy);
std::vector<double> K_lambda(const std::vector<std::vector<double>>& slices, double dy);

struct InvariantReport {
  std::vector<double> t, K1, K2, G;
  std::vector<double> K1_drift, K2_drift;
  double max_K1_drift = 0.0;
  double max_K2_drift = 0.0;
};
// Drift is |K(t) - K(0)| / |K(0)|, or the absolute change when |K(0)| < 1e-12.
double relative_drift(double k0, double k);
InvariantReport invariant_report(const Trajectory<Vec3Field>& traj, double eps = kK2Epsilon);
// t,K1,K2,G,K1_rel_drift,K2_rel_drift
void write_invariant_csv(std::ostream& os, const InvariantReport& r);

}  // namespace spinlab
