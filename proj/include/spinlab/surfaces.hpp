#pragma once

#include <array>

#include "spinlab/calculus.hpp"

namespace spinlab {

using Sym2 = std::array<std::array<ScalarField, 2>, 2>;

// First and second fundamental forms; index 0 is x, 1 is y.
struct FormData {
  Sym2 g;     // E F / F G
  Sym2 b;     // L M / M N
  Sym2 ginv;  // inverse metric
  // Present only when built from a position field.
  Vec3Field r, rx, ry, n;
  bool has_patch = false;

  const Grid2D& grid() const { return g[0][0].grid(); }
};

// Forms of r(x,y). Throws ImmersionError if |r_x ^ r_y| < 1e-12 anywhere.
FormData fundamental_forms(const Vec3Field& r);
// Forms from raw coefficient fields. Throws MetricError if g is not positive
// definite.
FormData forms_from_coefficients(const ScalarField& E, const ScalarField& F, const ScalarField& G,
                                 const ScalarField& L, const ScalarField& M, const ScalarField& N);

ScalarField gaussian_curvature(const FormData& f);

// gamma[k][i][j] = Gamma^k_ij
using Christoffel = std::array<std::array<std::array<ScalarField, 2>, 2>, 2>;
Christoffel christoffel(const FormData& f);

struct Weingarten {
  std::array<ScalarField, 2> p, q;
  double residual_x = 0.0;  // max |n_x - p_i r_i|, patch only
  double residual_y = 0.0;  // max |n_y - q_i r_i|
};
Weingarten weingarten(const FormData& f);

// max residuals of r_xx, r_xy, r_yy against Gamma^k_ij r_k + b_ij n.
std::array<double, 3> gauss_formula_residuals(const FormData& f, const Christoffel& gam, int margin = 0);

// riemann[l][i][j][k] = R^l_ijk
using Riemann = std::array<std::array<std::array<std::array<ScalarField, 2>, 2>, 2>, 2>;
Riemann curvature_tensor(const FormData& f, const Christoffel& gam);
// K = -g_1l R^l_212 / det g
ScalarField gaussian_curvature_from_tensor(const FormData& f, const Riemann& R);

struct MpcResidual {
  double gauss = 0.0;
  // d_k b_ij - d_j b_ik - Gamma^s_ik b_is + Gamma^s_ij b_ks, indices as printed
  double codazzi_printed = 0.0;
  // same with b_sj, b_sk: the textbook arrangement
  double codazzi_standard = 0.0;
  double codazzi() const { return codazzi_standard; }
};
// Gauss part: R^l_ijk - (b_ij b^l_k - b_ik b^l_j).
MpcResidual mpc_residual(const FormData& f, int margin = 0);

// max |A_y - B_x + [A,B]| for the 3x3 frame matrices of Z = (r_x, r_y, n).
double surface_zero_curvature(const FormData& f, int margin = 0);

// k = L/2 as printed, or k = L, which is the curvature of the x-lines
// (e1_x = L e2) when E = 1 and F = 0.
enum class TrihedralReading { Printed, Geodesic };

struct Trihedral {
  Vec3Field e1, e2, e3;
  ScalarField k, tau;
};
// e1 = r_x/sqrt(E), e2 = n, e3 = e1 ^ e2, tau = M/sqrt(G). Throws GaugeError
// unless |E-1| and |F| are below 1e-8.
Trihedral k_tau_from_surface(const FormData& f, TrihedralReading reading = TrihedralReading::Printed);
// k and tau measured off the trihedral directly: e1_x.e2 and e2_x.e3.
std::pair<ScalarField, ScalarField> trihedral_k_tau(const Trihedral& t);

namespace surface {

Vec3Field plane(const Grid2D& g);
// x = polar angle, y = azimuth.
Vec3Field sphere(const Grid2D& g, double radius);
// x = arc length around the axis, y = height.
Vec3Field cylinder(const Grid2D& g, double radius);
// x = longitude, y = tube angle.
Vec3Field torus(const Grid2D& g, double major, double minor);
Vec3Field graph(const Grid2D& g, double amplitude, double width);
// Cylinder in orthonormal geodesic coordinates whose x-lines are helices of
// pitch angle alpha: E = G = 1, F = 0, curvature cos^2 a / R, torsion
// sin a cos a / R.
Vec3Field helical_cylinder(const Grid2D& g, double radius, double alpha);

}  // namespace surface

}  // namespace spinlab
