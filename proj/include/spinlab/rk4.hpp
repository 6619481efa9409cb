#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "spinlab/errors.hpp"
#include "spinlab/field.hpp"

namespace spinlab {

namespace detail {
inline bool state_finite(double v) { return std::isfinite(v); }
inline bool state_finite(const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
template <class Derived>
bool state_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.allFinite();
}
template <class T>
bool state_finite(const Field<T>& f) {
  return f.all_finite();
}
}  // namespace detail

// One classical four-stage Runge-Kutta step of y' = rhs(y). `step` is the
// index reported if the update is not finite.
template <class State, class Rhs>
State rk4_step(const State& y, Rhs&& rhs, double dt, long step = 0) {
  if (!(dt > 0.0)) throw ParameterError("rk4 step size must be positive");
  const State k1 = rhs(y);
  const State k2 = rhs(y + (0.5 * dt) * k1);
  const State k3 = rhs(y + (0.5 * dt) * k2);
  const State k4 = rhs(y + dt * k3);
  State next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!detail::state_finite(next))
    throw BlowUpError("non-finite value at step " + std::to_string(step), step);
  return next;
}

// Time-ordered snapshots of an evolving state.
template <class State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  std::size_t size() const { return states.size(); }
  void push(double t, State s) {
    times.push_back(t);
    states.push_back(std::move(s));
  }
};

// Time derivative of snapshot k by central differences over uniformly spaced
// snapshots: five-point where available, otherwise three-point.
template <class State>
State time_derivative(const Trajectory<State>& traj, std::size_t k) {
  const std::size_t n = traj.size();
  if (n < 3 || k == 0 || k + 1 >= n)
    throw InsufficientDataError("central time difference needs neighbours on both sides");
  const double dt = traj.times[k + 1] - traj.times[k];
  if (k >= 2 && k + 2 < n) {
    return (1.0 / (12.0 * dt)) *
           (traj.states[k - 2] - 8.0 * traj.states[k - 1] + 8.0 * traj.states[k + 1] - traj.states[k + 2]);
  }
  return (0.5 / dt) * (traj.states[k + 1] - traj.states[k - 1]);
}

}  // namespace spinlab
