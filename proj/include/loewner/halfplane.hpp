#pragma once

#include <functional>
#include <span>
#include <vector>

#include "loewner/driving_term.hpp"
#include "loewner/ode.hpp"
#include "loewner/trajectory.hpp"

// Half-plane Löwner flow in the map-out convention
//   dh/dt = 2 / (h - lambda(t)),   h(z, 0) = z,
// for interior points, boundary points and the two singular solutions that
// start at the driving point itself.

namespace loewner::halfplane {

/// Any real function of time usable as a driving term.
using DrivingFn = std::function<double(double)>;

/// Start-up settings for the singular solutions.
struct SingularOptions {
  /// Time at which the log-time start-up hands over to the ordinary integrator.
  double handoff = 1e-8;
  /// Agreement required between start-ups begun at successively deeper times,
  /// relative to max(1, |phi|) with phi = (h - lambda(0)) / sqrt(t).
  double bootstrap_tol = 1e-9;
  /// Deepest start, in decades below the hand-off time.
  int max_depth_decades = 128;
};

struct SwallowedInterval {
  double t = 0.0;
  double lower = 0.0;  ///< h-(lambda(0), t)
  double upper = 0.0;  ///< h+(lambda(0), t)
};

struct RatioDiagnostic {
  std::vector<double> t_grid;
  std::vector<double> ratio;  ///< phi(t) = (h+(t) - lambda(0)) / sqrt(t)
  double norm = 0.0;          ///< the Hölder-1/2 norm c used for the bound
  double bound = 0.0;         ///< (c + sqrt(c^2 + 16)) / 2
  double max_ratio = 0.0;
};

struct SingularPair {
  double tau = 0.0;
  BoundaryTrajectory lower;
  BoundaryTrajectory upper;
};

/// (c + sqrt(c^2 + 16)) / 2, the positive root of A^2 - c A - 4 = 0.
[[nodiscard]] double sharp_ratio_bound(double c);

/// Interior point z0 (Im z0 > 0) evolved to t_end. Samples every accepted
/// step, or only `output_times` when given.
[[nodiscard]] InteriorTrajectory evolve_interior(const DrivingTerm& term, ComplexValue z0,
                                                 double t_end, const SolverOptions& opt = {},
                                                 std::span<const double> output_times = {});
[[nodiscard]] InteriorTrajectory evolve_interior(const DrivingFn& lambda, ComplexValue z0,
                                                 double t_end, const SolverOptions& opt = {},
                                                 std::span<const double> output_times = {});

/// Boundary point x0 != lambda(0) evolved to t_end; the sign of x - lambda is
/// preserved until swallowing.
[[nodiscard]] BoundaryTrajectory evolve_boundary(const DrivingTerm& term, double x0, double t_end,
                                                 const SolverOptions& opt = {},
                                                 std::span<const double> output_times = {});
[[nodiscard]] BoundaryTrajectory evolve_boundary(const DrivingFn& lambda, double x0, double t_end,
                                                 const SolverOptions& opt = {},
                                                 std::span<const double> output_times = {});

/// The singular solutions h+(lambda(0), t) (side = +1) and h-(lambda(0), t)
/// (side = -1) on [0, t_end].
///
/// phi = (h - lambda(0)) / sqrt(t) obeys
///   d phi / d log t = 2 / (phi - mu(t)) - phi / 2,  mu = (lambda(t) - lambda(0)) / sqrt(t),
/// whose stationary points are the roots of phi^2 - mu phi - 4 = 0. The start-up
/// seeds phi with that root at a deep time, integrates in log time up to the
/// hand-off time and repeats from deeper starts until consecutive runs agree;
/// the log-time flow contracts at rate at least 1/2, so the seed error decays
/// like sqrt(t_start / t). From the hand-off on the ordinary integrator takes over.
[[nodiscard]] BoundaryTrajectory singular_solution(const DrivingFn& lambda, int side, double t_end,
                                                   const SolverOptions& opt = {},
                                                   std::span<const double> output_times = {},
                                                   const SingularOptions& sopt = {});
[[nodiscard]] BoundaryTrajectory singular_plus(const DrivingTerm& term, double t_end,
                                               const SolverOptions& opt = {},
                                               std::span<const double> output_times = {},
                                               const SingularOptions& sopt = {});
[[nodiscard]] BoundaryTrajectory singular_minus(const DrivingTerm& term, double t_end,
                                                const SolverOptions& opt = {},
                                                std::span<const double> output_times = {},
                                                const SingularOptions& sopt = {});

/// [h-(lambda(0), t), h+(lambda(0), t)] on a sorted grid starting at or after 0.
/// Throws InvariantViolation if the ordering lower < lambda(t) < upper or the
/// monotonicity of either end fails.
[[nodiscard]] std::vector<SwallowedInterval> swallowed_interval(
    const DrivingTerm& term, std::span<const double> t_grid, const SolverOptions& opt = {},
    const SingularOptions& sopt = {});

/// phi(t) = (h+ - lambda(0)) / sqrt(t) on a grid of positive times, with the
/// bound computed from `norm` (the Hölder-1/2 norm of the term).
[[nodiscard]] RatioDiagnostic ratio_limsup_check(const DrivingTerm& term, double norm,
                                                 std::span<const double> t_grid,
                                                 const SolverOptions& opt = {},
                                                 const SingularOptions& sopt = {});

/// For each tau, the singular pair started at (tau, lambda(tau)), sampled at
/// the times of `sample_times` that are >= tau. Checks
/// lower < lambda < upper after tau and strict nesting between pairs;
/// throws InvariantViolation otherwise.
[[nodiscard]] std::vector<SingularPair> singular_family(const DrivingTerm& term,
                                                        std::span<const double> tau_grid,
                                                        double t_end,
                                                        std::span<const double> sample_times = {},
                                                        const SolverOptions& opt = {},
                                                        const SingularOptions& sopt = {});

}  // namespace loewner::halfplane
