#include "loewner/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner::halfplane {

namespace {

struct BoundaryField {
  const DrivingFn& lambda;
  double side;
  double operator()(double t, const double& x, double& dxdt) const {
    const double d = x - lambda(t);
    dxdt = 2.0 / d;
    return side * d;
  }
};

struct InteriorField {
  const DrivingFn& lambda;
  double operator()(double t, const ComplexValue& h, ComplexValue& dhdt) const {
    const ComplexValue d = h - lambda(t);
    dhdt = 2.0 / d;
    return std::abs(d);
  }
};

// phi = (h - lambda(0)) / sqrt(t) in log time s = log t, for t <= t_cap.
struct ScaledField {
  const DrivingFn& lambda;
  double lambda0;
  double side;
  double t_cap;
  [[nodiscard]] double mu(double t) const { return (lambda(t) - lambda0) / std::sqrt(t); }
  double operator()(double s, const double& phi, double& dphi) const {
    const double m = mu(std::min(std::exp(s), t_cap));
    const double d = phi - m;
    dphi = 2.0 / d - 0.5 * phi;
    return side * d;
  }
};

double stationary_root(double mu, double side) { return 0.5 * (mu + side * std::hypot(mu, 4.0)); }

DrivingFn as_fn(const DrivingTerm& term) {
  return [term](double t) { return term(t); };
}

void check_output_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw ArgumentError("output times must be non-negative");
    if (i > 0 && !(times[i] > times[i - 1])) throw ArgumentError("output times must be strictly increasing");
  }
}

double value_at(const BoundaryTrajectory& traj, double t) {
  auto it = std::lower_bound(traj.t.begin(), traj.t.end(), t);
  if (it == traj.t.end() || *it != t) throw ArgumentError("trajectory has no sample at the requested time");
  return traj.value[static_cast<std::size_t>(it - traj.t.begin())];
}

}  // namespace

double sharp_ratio_bound(double c) { return 0.5 * (c + std::sqrt(c * c + 16.0)); }

InteriorTrajectory evolve_interior(const DrivingFn& lambda, ComplexValue z0, double t_end,
                                   const SolverOptions& opt, std::span<const double> output_times) {
  if (!(z0.imag() > 0.0)) throw ArgumentError("evolve_interior: start point must satisfy Im z0 > 0");
  if (!(t_end >= 0.0)) throw ArgumentError("evolve_interior: t_end must be non-negative");
  check_output_times(output_times);
  const InteriorField field{lambda};
  return ode::integrate(field, 0.0, z0, t_end, output_times, opt);
}

InteriorTrajectory evolve_interior(const DrivingTerm& term, ComplexValue z0, double t_end,
                                   const SolverOptions& opt, std::span<const double> output_times) {
  return evolve_interior(as_fn(term), z0, t_end, opt, output_times);
}

BoundaryTrajectory evolve_boundary(const DrivingFn& lambda, double x0, double t_end,
                                   const SolverOptions& opt, std::span<const double> output_times) {
  if (!(t_end >= 0.0)) throw ArgumentError("evolve_boundary: t_end must be non-negative");
  check_output_times(output_times);
  const double l0 = lambda(0.0);
  if (x0 == l0)
    throw ArgumentError("evolve_boundary: x0 equals lambda(0); use singular_plus/singular_minus");
  const BoundaryField field{lambda, x0 > l0 ? 1.0 : -1.0};
  return ode::integrate(field, 0.0, x0, t_end, output_times, opt);
}

BoundaryTrajectory evolve_boundary(const DrivingTerm& term, double x0, double t_end,
                                   const SolverOptions& opt, std::span<const double> output_times) {
  return evolve_boundary(as_fn(term), x0, t_end, opt, output_times);
}

BoundaryTrajectory singular_solution(const DrivingFn& lambda, int side, double t_end,
                                     const SolverOptions& opt, std::span<const double> output_times,
                                     const SingularOptions& sopt) {
  if (side != 1 && side != -1) throw ArgumentError("singular_solution: side must be +1 or -1");
  if (!(t_end >= 0.0)) throw ArgumentError("singular_solution: t_end must be non-negative");
  if (!(sopt.handoff > 0.0) || !(sopt.bootstrap_tol > 0.0) || sopt.max_depth_decades < 2)
    throw ArgumentError("singular_solution: invalid start-up options");
  check_output_times(output_times);
  opt.validate();

  const double lambda0 = lambda(0.0);
  BoundaryTrajectory out;
  out.push(0.0, lambda0);
  if (t_end == 0.0) return out;

  const double t_hand = std::min(sopt.handoff, t_end);
  const double s_hand = std::log(t_hand);
  const ScaledField scaled{lambda, lambda0, static_cast<double>(side), t_hand};
  const bool dense = output_times.empty();

  auto run = [&](int depth, std::span<const double> s_outputs) {
    const double s0 = s_hand - depth * std::numbers::ln10;
    const double phi0 = stationary_root(scaled.mu(std::exp(s0)), side);
    try {
      return ode::integrate(scaled, s0, phi0, s_hand, s_outputs, opt);
    } catch (const IntegrationError& e) {
      throw BootstrapError(std::string("singular start-up failed: ") + e.what());
    }
  };
  auto end_value = [](const BoundaryTrajectory& traj) {
    if (!traj.terminal.completed()) throw BootstrapError("singular start-up collided with the driving term");
    return traj.back();
  };

  int depth = 2;
  double phi_prev = end_value(run(depth, {}));
  bool settled = false;
  while (2 * depth <= sopt.max_depth_decades) {
    depth *= 2;
    const double phi = end_value(run(depth, {}));
    const bool agree = std::abs(phi - phi_prev) <= sopt.bootstrap_tol * std::max(1.0, std::abs(phi));
    phi_prev = phi;
    if (agree) {
      settled = true;
      break;
    }
  }
  if (!settled) throw BootstrapError("singular start-up did not settle within the depth budget");

  // Final log-time pass, recording the requested times below the hand-off.
  const double s_start = s_hand - depth * std::numbers::ln10;
  const double t_start = std::exp(s_start);
  std::vector<double> early_t;
  std::vector<double> early_s;
  for (double t : output_times) {
    if (t <= 0.0) continue;
    if (t >= t_hand) break;
    if (t <= t_start) {
      out.push(t, lambda0 + std::sqrt(t) * stationary_root(scaled.mu(t), side));
    } else {
      early_t.push_back(t);
      early_s.push_back(std::log(t));
    }
  }
  // An empty list would mean dense recording; the hand-off time itself keeps only the end points.
  if (!dense && early_s.empty()) early_s.push_back(s_hand);
  const BoundaryTrajectory phase = run(depth, dense ? std::span<const double>{} : std::span<const double>(early_s));
  const double phi_hand = end_value(phase);
  if (!dense && phase.size() != early_t.size() + 2)
    throw BootstrapError("singular start-up could not place the requested early samples");
  if (dense) {
    for (std::size_t i = 1; i + 1 < phase.size(); ++i) {
      const double t = std::exp(phase.t[i]);
      if (t > out.back_time() && t < t_hand) out.push(t, lambda0 + std::sqrt(t) * phase.value[i]);
    }
  } else {
    for (std::size_t k = 0; k < early_t.size(); ++k)
      out.push(early_t[k], lambda0 + std::sqrt(early_t[k]) * phase.value[k + 1]);
  }
  const double h_hand = lambda0 + std::sqrt(t_hand) * phi_hand;
  if (t_hand > out.back_time()) out.push(t_hand, h_hand);
  if (t_hand >= t_end) return out;

  std::vector<double> late;
  for (double t : output_times)
    if (t > t_hand) late.push_back(t);
  if (!dense && late.empty()) late.push_back(t_end);
  const BoundaryField field{lambda, static_cast<double>(side)};
  const BoundaryTrajectory tail = ode::integrate(field, t_hand, h_hand, t_end, late, opt);
  // In output mode keep only requested times (and t_end).
  const bool keep_hand = dense || std::binary_search(output_times.begin(), output_times.end(), t_hand);
  if (!keep_hand && out.back_time() == t_hand) {
    out.t.pop_back();
    out.value.pop_back();
  }
  for (std::size_t i = 1; i < tail.size(); ++i) out.push(tail.t[i], tail.value[i]);
  out.terminal = tail.terminal;
  return out;
}

BoundaryTrajectory singular_plus(const DrivingTerm& term, double t_end, const SolverOptions& opt,
                                 std::span<const double> output_times, const SingularOptions& sopt) {
  return singular_solution(as_fn(term), +1, t_end, opt, output_times, sopt);
}

BoundaryTrajectory singular_minus(const DrivingTerm& term, double t_end, const SolverOptions& opt,
                                  std::span<const double> output_times, const SingularOptions& sopt) {
  return singular_solution(as_fn(term), -1, t_end, opt, output_times, sopt);
}

std::vector<SwallowedInterval> swallowed_interval(const DrivingTerm& term,
                                                  std::span<const double> t_grid,
                                                  const SolverOptions& opt,
                                                  const SingularOptions& sopt) {
  check_output_times(t_grid);
  std::vector<SwallowedInterval> out;
  if (t_grid.empty()) return out;
  const double t_end = t_grid.back();
  const BoundaryTrajectory lo = singular_minus(term, t_end, opt, t_grid, sopt);
  const BoundaryTrajectory hi = singular_plus(term, t_end, opt, t_grid, sopt);
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    SwallowedInterval iv{t, value_at(lo, t), value_at(hi, t)};
    if (t > 0.0) {
      const double l = term(t);
      if (!(iv.lower < l && l < iv.upper)) {
        std::ostringstream os;
        os << "swallowed interval at t=" << t << " does not contain lambda(t)";
        throw InvariantViolation(os.str());
      }
    }
    if (!out.empty() && !(iv.lower < out.back().lower && iv.upper > out.back().upper)) {
      std::ostringstream os;
      os << "swallowed interval is not strictly growing at t=" << t;
      throw InvariantViolation(os.str());
    }
    out.push_back(iv);
  }
  return out;
}

RatioDiagnostic ratio_limsup_check(const DrivingTerm& term, double norm,
                                   std::span<const double> t_grid, const SolverOptions& opt,
                                   const SingularOptions& sopt) {
  check_output_times(t_grid);
  if (t_grid.empty() || !(t_grid.front() > 0.0)) throw ArgumentError("ratio check needs positive grid times");
  if (!(norm >= 0.0)) throw ArgumentError("ratio check: norm must be non-negative");
  const BoundaryTrajectory hi = singular_plus(term, t_grid.back(), opt, t_grid, sopt);
  const double lambda0 = term(0.0);
  RatioDiagnostic d;
  d.norm = norm;
  d.bound = sharp_ratio_bound(norm);
  d.t_grid.assign(t_grid.begin(), t_grid.end());
  for (double t : t_grid) {
    const double r = (value_at(hi, t) - lambda0) / std::sqrt(t);
    d.ratio.push_back(r);
    d.max_ratio = std::max(d.max_ratio, r);
  }
  return d;
}

std::vector<SingularPair> singular_family(const DrivingTerm& term, std::span<const double> tau_grid,
                                          double t_end, std::span<const double> sample_times,
                                          const SolverOptions& opt, const SingularOptions& sopt) {
  check_output_times(tau_grid);
  if (!tau_grid.empty() && !(tau_grid.back() < t_end))
    throw ArgumentError("singular_family: every tau must lie in [0, t_end)");

  std::vector<double> grid(sample_times.begin(), sample_times.end());
  if (grid.empty()) {
    constexpr int kDefaultSamples = 64;
    for (int i = 0; i <= kDefaultSamples; ++i) grid.push_back(t_end * i / kDefaultSamples);
    grid.insert(grid.end(), tau_grid.begin(), tau_grid.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }
  check_output_times(grid);

  std::vector<SingularPair> family;
  for (double tau : tau_grid) {
    const DrivingFn shifted = [&term, tau, t_end](double s) { return term(std::min(tau + s, t_end)); };
    std::vector<double> times;
    std::vector<double> local;
    for (double t : grid) {
      if (t < tau || t > t_end) continue;
      times.push_back(t);
      local.push_back(t - tau);
    }
    SingularPair pair;
    pair.tau = tau;
    const double span = t_end - tau;
    const BoundaryTrajectory lo = singular_solution(shifted, -1, span, opt, local, sopt);
    const BoundaryTrajectory hi = singular_solution(shifted, +1, span, opt, local, sopt);
    for (std::size_t k = 0; k < times.size(); ++k) {
      pair.lower.push(times[k], value_at(lo, local[k]));
      pair.upper.push(times[k], value_at(hi, local[k]));
      if (times[k] > tau) {
        const double l = term(times[k]);
        if (!(pair.lower.back() < l && l < pair.upper.back())) {
          std::ostringstream os;
          os << "singular pair from tau=" << tau << " does not straddle lambda at t=" << times[k];
          throw InvariantViolation(os.str());
        }
      }
    }
    family.push_back(std::move(pair));
  }

  for (std::size_t a = 0; a < family.size(); ++a) {
    for (std::size_t b = a + 1; b < family.size(); ++b) {
      const SingularPair& outer = family[a];
      const SingularPair& inner = family[b];
      for (std::size_t k = 0; k < inner.lower.size(); ++k) {
        const double t = inner.lower.t[k];
        if (t <= inner.tau) continue;
        const double outer_lo = value_at(outer.lower, t);
        const double outer_hi = value_at(outer.upper, t);
        if (!(outer_lo < inner.lower.value[k] && inner.upper.value[k] < outer_hi)) {
          std::ostringstream os;
          os << "singular pairs from tau=" << outer.tau << " and tau=" << inner.tau
             << " are not strictly nested at t=" << t;
          throw InvariantViolation(os.str());
        }
      }
    }
  }
  return family;
}

}  // namespace loewner::halfplane
