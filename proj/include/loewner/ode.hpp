#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>

#include "loewner/errors.hpp"
#include "loewner/trajectory.hpp"

namespace loewner {

/// Step-control and contact settings shared by every Löwner integrator.
struct SolverOptions {
  /// Local error tolerance per step (used as both absolute and relative).
  double tol = 1e-10;
  /// Contact is declared once the distance to the driving point drops below this.
  double collision_threshold = 1e-9;
  /// Absolute step-size floor.
  double min_step = 1e-14;
  /// On step underflow, a contact extrapolated to occur within this time is
  /// reported as swallowing instead of an integration failure.
  double contact_horizon = 1e-11;
  std::size_t max_steps = 5'000'000;

  void validate() const;
};

namespace ode {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }
inline bool finite(double x) { return std::isfinite(x); }
inline bool finite(const std::complex<double>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}
inline std::complex<double> as_complex(double x) { return {x, 0.0}; }
inline std::complex<double> as_complex(const std::complex<double>& z) { return z; }

// Dormand–Prince 5(4) tableau.
namespace dp {
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

template <class State>
struct StepResult {
  bool valid = false;
  State y{};
  State k7{};
  double gap = 0.0;
  double error = 0.0;
};

/// One Dormand–Prince step of size h from (t, y) with first stage k1.
///
/// `field(t, y, dydt)` writes the derivative and returns the signed distance
/// from the state to the singular set; a non-positive distance or a
/// non-finite derivative at any stage marks the step invalid. Stage times are
/// clamped to `t_stop` so that closed driving domains are never exceeded.
template <class State, class Field>
StepResult<State> dp_step(const Field& field, double t, const State& y, const State& k1, double h,
                          double t_stop, double tol) {
  using namespace dp;
  StepResult<State> r;
  auto stage = [&](double ts, const State& ys, State& k) {
    const double g = field(std::min(ts, t_stop), ys, k);
    return g > 0.0 && finite(k);
  };
  State k2{}, k3{}, k4{}, k5{}, k6{}, k7{};
  if (!stage(t + c2 * h, y + h * (a21 * k1), k2)) return r;
  if (!stage(t + c3 * h, y + h * (a31 * k1 + a32 * k2), k3)) return r;
  if (!stage(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3), k4)) return r;
  if (!stage(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5)) return r;
  const double t_new = std::min(t + h, t_stop);
  if (!stage(t_new, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6))
    return r;
  const State y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const double gap = field(t_new, y_new, k7);
  if (!(gap > 0.0) || !finite(k7) || !finite(y_new)) return r;
  const State err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  const double scale = tol * (1.0 + std::max(magnitude(y), magnitude(y_new)));
  r.valid = true;
  r.y = y_new;
  r.k7 = k7;
  r.gap = gap;
  r.error = magnitude(err) / scale;
  return r;
}

/// Adaptive Dormand–Prince 5(4) integration of a Löwner-type field from t0
/// to t_end with contact (swallowing) detection.
///
/// With empty `output_times` every accepted step is recorded; otherwise only
/// t0, the listed times (sorted) inside (t0, t_end) and t_end itself are. Swallowing is
/// reported through the trajectory's terminal:
///   - an accepted state closer than collision_threshold: the crossing time
///     is refined by bisection on the step length;
///   - step-size underflow with the squared distance extrapolating to zero
///     within contact_horizon.
/// Any other underflow throws IntegrationError with the last accepted state.
template <class State, class Field>
Trajectory<State> integrate(const Field& field, double t0, const State& y0, double t_end,
                            std::span<const double> output_times, const SolverOptions& opt) {
  opt.validate();
  if (!(t_end >= t0)) throw ArgumentError("integrate: t_end precedes the start time");
  Trajectory<State> out;
  out.push(t0, y0);
  const bool dense = output_times.empty();
  std::size_t next_out = 0;
  while (next_out < output_times.size() && output_times[next_out] <= t0) ++next_out;

  double t = t0;
  State y = y0;
  State k1{};
  double gap = field(t, y, k1);
  if (!(gap > opt.collision_threshold)) {
    out.terminal.swallowed_at = t0;
    return out;
  }
  if (!finite(k1)) throw IntegrationError("integrate: non-finite derivative at start", t, as_complex(y));
  if (t_end == t0) return out;

  const double span = t_end - t0;
  const double speed = magnitude(k1);
  double h = 0.1 * span;
  if (speed > 0.0) h = std::min(h, 0.01 * std::max(gap, magnitude(y) * 1e-3) / speed);
  h = std::max(h, opt.min_step);

  double prev_t = t;
  double prev_gap = gap;
  bool have_prev = false;
  std::size_t steps = 0;

  auto swallow = [&](double tau, const State& y_at) {
    if (tau > out.back_time()) out.push(tau, y_at);
    out.terminal.swallowed_at = tau;
  };

  while (t < t_end) {
    if (++steps > opt.max_steps)
      throw IntegrationError("integrate: step limit exceeded", t, as_complex(y));

    while (!dense && next_out < output_times.size() && output_times[next_out] <= t) ++next_out;
    const bool to_output = !dense && next_out < output_times.size() && output_times[next_out] < t_end;
    const double target = to_output ? output_times[next_out] : t_end;
    double hh = h;
    bool hits = false;
    if (t + hh >= target) {
      hh = target - t;
      hits = true;
    }
    if (!hits && hh < opt.min_step) {
      // Underflow: accept only an imminent contact.
      if (have_prev && gap < prev_gap && t > prev_t) {
        const double rate = (gap * gap - prev_gap * prev_gap) / (t - prev_t);
        const double tau_est = gap * gap / (-rate);
        if (tau_est <= opt.contact_horizon) {
          swallow(std::min(t + tau_est, t_end), y);
          return out;
        }
      }
      throw IntegrationError("integrate: step size underflow", t, as_complex(y));
    }

    StepResult<State> trial = dp_step(field, t, y, k1, hh, hits ? target : t_end, opt.tol);
    if (!trial.valid) {
      h = hh * 0.25;
      continue;
    }
    if (trial.error > 1.0) {
      h = hh * std::max(0.1, 0.9 * std::pow(trial.error, -0.2));
      continue;
    }

    const double t_new = hits ? target : t + hh;
    if (trial.gap < opt.collision_threshold) {
      // Bisect the step length for the first time the distance reaches the threshold.
      double lo = 0.0, hi = hh;
      State y_lo = y;
      for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)); ++it) {
        const double mid = 0.5 * (lo + hi);
        StepResult<State> probe = dp_step(field, t, y, k1, mid, t + mid, opt.tol);
        if (probe.valid && probe.gap >= opt.collision_threshold) {
          lo = mid;
          y_lo = probe.y;
        } else {
          hi = mid;
        }
      }
      swallow(t + 0.5 * (lo + hi), y_lo);
      return out;
    }

    prev_t = t;
    prev_gap = gap;
    have_prev = true;
    t = t_new;
    y = trial.y;
    k1 = trial.k7;
    gap = trial.gap;

    if (dense || (hits && (to_output || t == t_end))) out.push(t, y);
    if (hits && to_output) ++next_out;

    const double factor = trial.error > 0.0 ? std::min(5.0, 0.9 * std::pow(trial.error, -0.2)) : 5.0;
    const double proposed = hh * factor;
    h = hits ? std::max(h, proposed) : proposed;
  }
  return out;
}

}  // namespace ode
}  // namespace loewner
