#include "spinlab/nonisospectral.hpp"

// pchip.hpp in Boost 1.74 calls isnan unqualified
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>
#include <cmath>
#include <limits>
#include <ostream>

#include "spinlab/calculus.hpp"

namespace spinlab {

namespace {

cplx ipow(cplx z, int n) {
  cplx r = 1.0;
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

double ipow(double z, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= z;
  return r;
}

}  // namespace

void LambdaParams::validate() const {
  if (n < 1) throw ParameterError("power n must be a positive integer");
}

cplx exact_lambda(double y, double t, const LambdaParams& p) {
  p.validate();
  const double den = p.a - p.kappa * t;
  if (std::abs(den) < 1e-12) throw DomainError("a - kappa t vanishes at t = " + std::to_string(t));
  const cplx z = (y + p.c) / den;
  return p.n == 1 ? z : std::pow(z, 1.0 / p.n);
}

LambdaJet exact_lambda_jet(double y, double t, const LambdaParams& p) {
  const cplx l = exact_lambda(y, t, p);
  const double n = p.n;
  return {l, l / (n * (y + p.c)), p.kappa * l / (n * (p.a - p.kappa * t))};
}

cplx analytic_residual(double y, double t, const LambdaParams& p) {
  const LambdaJet j = exact_lambda_jet(y, t, p);
  return j.lambda_t - p.kappa * ipow(j.lambda, p.n) * j.lambda_y;
}

std::pair<cplx, cplx> printed_separable_pair(double y, double t, const LambdaParams& p) {
  const cplx l = exact_lambda(y, t, p);
  return {l / (p.a - p.kappa * t), l / (y + p.c)};
}

CplxField sample_lambda(const Grid2D& yt, const LambdaParams& p) {
  return sample(yt, [&](double y, double t) { return exact_lambda(y, t, p); });
}

CplxField lambda_residual(const CplxField& lambda, double kappa, int n) {
  if (n < 1) throw ParameterError("power n must be a positive integer");
  const CplxField ly = diff(lambda, Axis::X), lt = diff(lambda, Axis::Y);
  CplxField r(lambda.grid());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = lt[k] - kappa * ipow(lambda[k], n) * ly[k];
  return r;
}

BreakingReport breaking_time(const std::vector<double>& y, const std::vector<double>& lambda0, double kappa, int n) {
  if (y.size() != lambda0.size() || y.size() < 2) throw ParameterError("need matching y and lambda samples");
  BreakingReport b{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    // gap y_{i+1} - y_i closes at rate kappa (l_{i+1}^n - l_i^n)
    const double rate = kappa * (ipow(lambda0[i + 1], n) - ipow(lambda0[i], n));
    if (rate <= 0.0) continue;
    const double t = (y[i + 1] - y[i]) / rate;
    if (t < b.t_break) {
      b.t_break = t;
      b.y_break = y[i] - kappa * ipow(lambda0[i], n) * t;
    }
  }
  return b;
}

LambdaEvolution evolve_lambda_characteristics(const std::vector<double>& y, const std::vector<double>& lambda0,
                                              double kappa, int n, double T) {
  if (n < 1) throw ParameterError("power n must be a positive integer");
  if (y.size() < 4) throw ParameterError("need at least four samples");
  for (std::size_t i = 0; i + 1 < y.size(); ++i)
    if (!(y[i + 1] > y[i])) throw ParameterError("y samples must increase");
  const BreakingReport br = breaking_time(y, lambda0, kappa, n);
  if (br.t_break <= T)
    throw BreakingError("characteristics cross at t = " + std::to_string(br.t_break), br.t_break, br.y_break);

  LambdaEvolution out;
  out.t = T;
  out.y = y;
  out.lambda_char = lambda0;
  out.y_char.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out.y_char[i] = y[i] - kappa * ipow(lambda0[i], n) * T;

  auto xs = out.y_char;
  auto vs = out.lambda_char;
  const boost::math::interpolators::pchip<std::vector<double>> interp(std::move(xs), std::move(vs));
  out.lambda.resize(y.size());
  out.covered.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] < out.y_char.front()) {
      out.lambda[i] = out.lambda_char.front();
    } else if (y[i] > out.y_char.back()) {
      out.lambda[i] = out.lambda_char.back();
    } else {
      out.lambda[i] = interp(y[i]);
      out.covered[i] = 1;
    }
  }
  return out;
}

double lax_h_residual(const CplxField& lambda, const std::vector<double>& x) {
  if (x.empty()) throw ParameterError("need x samples");
  const Grid2D& g = lambda.grid();
  const CplxField l2 = map([](cplx l) { return l * l; }, lambda);
  double m = 0.0;
  const cplx I(0.0, 1.0);
  for (double xi : x) {
    const double s = xi - x.front();
    // both diagonal entries: exp(-+ i l^2 s)
    for (double sign : {1.0, -1.0}) {
      const CplxField h = map([&](cplx v) { return std::exp(-sign * I * v * s); }, l2);
      const CplxField hy = diff(h, Axis::X), ht = diff(h, Axis::Y);
      for (std::size_t k = 0; k < g.size(); ++k) m = std::max(m, std::abs(ht[k] - 2.0 * l2[k] * hy[k]));
    }
  }
  return m;
}

void write_lambda_csv(std::ostream& os, const CplxField& lambda, const CplxField& residual) {
  check_grid(lambda.grid(), residual.grid());
  const Grid2D& g = lambda.grid();
  os << "y,t,lambda_re,lambda_im,residual\n";
  const auto old = os.precision(17);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t k = g.index(i, j);
      os << g.x(i) << ',' << g.y(j) << ',' << lambda[k].real() << ',' << lambda[k].imag() << ',' << std::abs(residual[k]) << '\n';
    }
  os.precision(old);
}

}  // namespace spinlab
