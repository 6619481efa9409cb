#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "spinlab/field.hpp"

namespace spinlab {

// lambda_t = kappa lambda^n lambda_y
struct LambdaParams {
  double a = 1.0;
  cplx c = 0.0;
  double kappa = 1.0;
  int n = 1;
  void validate() const;
};

// ((y + c)/(a - kappa t))^(1/n), principal branch. DomainError at the pole
// a = kappa t.
cplx exact_lambda(double y, double t, const LambdaParams& p);

struct LambdaJet {
  cplx lambda, lambda_y, lambda_t;
};
// lambda_t = kappa lambda / (n (a - kappa t)), lambda_y = lambda / (n (y + c))
LambdaJet exact_lambda_jet(double y, double t, const LambdaParams& p);
// lambda_t - kappa lambda^n lambda_y from the analytic jet.
cplx analytic_residual(double y, double t, const LambdaParams& p);
// The separable pair as printed: lambda/(a - kappa t) and lambda/(y + c).
std::pair<cplx, cplx> printed_separable_pair(double y, double t, const LambdaParams& p);

// Samples lambda(y, t) on a grid whose x axis is y and whose y axis is t.
CplxField sample_lambda(const Grid2D& yt, const LambdaParams& p);
// lambda_t - kappa lambda^n lambda_y by fourth-order differences.
CplxField lambda_residual(const CplxField& lambda, double kappa, int n);

struct LambdaEvolution {
  double t = 0.0;
  std::vector<double> y_char, lambda_char;  // characteristic feet carried to t
  std::vector<double> y, lambda;            // resampled to the input nodes
  std::vector<std::uint8_t> covered;        // 0 where the node lies outside the carried range
};

struct BreakingReport {
  double t_break;  // +inf when characteristics never cross
  double y_break;
};
// Earliest crossing of neighbouring characteristics y_i - kappa lambda_i^n t.
BreakingReport breaking_time(const std::vector<double>& y, const std::vector<double>& lambda0, double kappa, int n);

// Carries lambda along y(t) = y0 - kappa lambda0^n t and resamples with PCHIP;
// nodes outside the carried range take the nearest end value. Throws
// BreakingError if characteristics cross before T.
LambdaEvolution evolve_lambda_characteristics(const std::vector<double>& y, const std::vector<double>& lambda0,
                                              double kappa, int n, double T);

// h = exp(-i lambda^2 (x - x0) s3) on every x node; returns max over the
// samples of |h_t - 2 lambda^2 h_y| with fourth-order differences.
double lax_h_residual(const CplxField& lambda, const std::vector<double>& x);

// y,t,lambda_re,lambda_im,residual
void write_lambda_csv(std::ostream& os, const CplxField& lambda, const CplxField& residual);

}  // namespace spinlab
