#pragma once

#include "spinlab/calculus.hpp"
#include "spinlab/rk4.hpp"
#include "spinlab/spin.hpp"

namespace spinlab {

struct QAux {
  ScalarField V1;
  CplxField V2;
};

// V1 = int (|q|^2)_y dx and V2 = int (p_yx q - p q_yx) dx with p = conj(q).
QAux solve_aux_q(const CplxField& q, YDerivative ydir = YDerivative::Native);

// q_t = i q_yx - 1/2 [(V1 q)_x - V2 q - |q|^2 q_y]
CplxField q_rhs(const CplxField& q, YDerivative ydir = YDerivative::Native);
// p_t from the conjugate equation, evaluated on independent p.
CplxField p_rhs(const CplxField& q, const CplxField& p, YDerivative ydir = YDerivative::Native);
// max |p_rhs(q, conj q) - conj(q_rhs(q))|
double conjugation_residual(const CplxField& q);
// max |Re V2|, which vanishes when p = conj(q).
double v2_real_part(const CplxField& q);

// V = int (|q'|^2)_y dx
ScalarField solve_V_strachan(const CplxField& qp, YDerivative ydir = YDerivative::Native);
// q'_t = i q'_xy - (V q')_x
CplxField strachan_rhs(const CplxField& qp, YDerivative ydir = YDerivative::Native);

// y-uniform reductions: q_t = i q_xx - |q|^2 q_x and q_t = i q_xx - (|q|^2 q)_x.
// The second derivative is the composed first difference, as in the 2+1
// kernels under the reduction dictionary.
CplxField q_rhs_1d(const CplxField& q);
CplxField strachan_rhs_1d(const CplxField& q);

// q' = q exp(-(i/2) int |q|^2 dx)
CplxField gauge_map_strachan(const CplxField& q);

enum class QEquation { MXXIIq, Strachan, MXXIIq1d, Strachan1d };

CplxField complex_rhs(QEquation eq, const CplxField& q, YDerivative ydir = YDerivative::Native);

// RK4 march; BlowUpError if max|q| exceeds 10x its initial value.
Trajectory<CplxField> evolve_complex(QEquation eq, const CplxField& q0, const EvolveOptions& opt,
                                     YDerivative ydir = YDerivative::Native);
inline Trajectory<CplxField> evolve_q(const CplxField& q0, const EvolveOptions& opt,
                                      YDerivative ydir = YDerivative::Native) {
  return evolve_complex(QEquation::MXXIIq, q0, opt, ydir);
}
inline Trajectory<CplxField> evolve_strachan(const CplxField& q0, const EvolveOptions& opt,
                                             YDerivative ydir = YDerivative::Native) {
  return evolve_complex(QEquation::Strachan, q0, opt, ydir);
}

// max over nodes of |q_t - rhs(q)| at snapshot k, q_t from central time
// differences of the trajectory.
double trajectory_residual(QEquation eq, const Trajectory<CplxField>& traj, std::size_t k,
                           YDerivative ydir = YDerivative::Native, int margin = 0);

Trajectory<CplxField> map_trajectory(const Trajectory<CplxField>& traj, CplxField (*f)(const CplxField&));

namespace init {

CplxField plane_wave(const Grid2D& g, cplx amplitude, double k, double l);
// Plane wave under a flat-top envelope exp(-(x/W)^16 - (y/W)^16); the y
// factor is dropped when y_flat is false. Localized, but a pure plane wave on
// the plateau.
CplxField flat_top_wave(const Grid2D& g, cplx amplitude, double k, double l, double W, bool y_flat = true);
CplxField gaussian_packet(const Grid2D& g, double amplitude, double width, double k, double l);
CplxField gaussian_packet_1d(const Grid2D& g, double amplitude, double width, double k);

}  // namespace init

}  // namespace spinlab
