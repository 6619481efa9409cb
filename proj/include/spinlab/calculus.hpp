#pragma once

#include <span>
#include <vector>

#include "spinlab/field.hpp"

namespace spinlab {

enum class Axis { X, Y };

// How y-derivatives are evaluated. FromX is the 1+1 reduction dictionary:
// every d/dy is replaced by d/dx, so y-uniform data follows the reduced flow.
enum class YDerivative { Native, FromX };

inline constexpr int kMinStencilNodes = 8;

// Fourth-order finite differences on one line: central in the interior,
// one-sided within two nodes of either end. Throws StencilError when the
// line has fewer than 8 nodes.
template <class T>
void diff_line(std::span<const T> in, double h, int order, std::span<T> out);

// Composite fourth-order x-antiderivative on one line, zero at the first node.
template <class T>
void antideriv_line(std::span<const T> in, double h, std::span<T> out);

// Quadrature weights (without the factor h) of the rule that integrates the
// cubic interpolants used by antideriv_line, so sum(w f) h = F(end).
std::vector<double> quadrature_weights(int n);

// Value at the midpoint between nodes k and k+1 by 4-point Lagrange
// interpolation (one-sided near the ends).
template <class T>
T midpoint_value(std::span<const T> in, int k);

template <class T>
Field<T> diff(const Field<T>& f, Axis axis, int order = 1);

// d/dy, or d/dx under the reduction dictionary.
template <class T>
Field<T> diff_y(const Field<T>& f, YDerivative mode) {
  return diff(f, mode == YDerivative::FromX ? Axis::X : Axis::Y, 1);
}

template <class T>
Field<T> antideriv_x(const Field<T>& f);

// Integral over the whole grid with the tensor-product rule; summation order
// is fixed (pairwise over rows) regardless of thread count.
double integrate(const ScalarField& f);
cplx integrate(const CplxField& f);
double integrate_line(std::span<const double> values, double h);
cplx integrate_line(std::span<const cplx> values, double h);

double pairwise_sum(std::span<const double> v);

}  // namespace spinlab
