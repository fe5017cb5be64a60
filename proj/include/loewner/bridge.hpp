#pragma once

#include <optional>
#include <span>

#include "loewner/driving_term.hpp"
#include "loewner/ode.hpp"

// Conversion between half-plane driving terms lambda and disk driving terms u
// that share boundary solutions. Along a companion boundary trajectory
//   u(t)      = x(t) - 2 arctan((x(t) - lambda(t)) / 2),
//   lambda(t) = alpha(t) - 2 tan((alpha(t) - u(t)) / 2),
// and the two trajectories satisfy tan((alpha - u)/2) = (x - lambda)/2 with
// alpha(0) = x(0).

namespace loewner::bridge {

/// A converted driving term sampled on the caller's grid.
struct Conversion {
  DrivingTerm term;
  SampledTable table;
  /// Set when the companion trajectory was swallowed.
  std::optional<double> swallowed_at;
  /// True when swallowing happened before the last grid time; the table then
  /// ends at the swallowing time.
  bool partial = false;
};

/// Swallowing this close to the last grid time counts as reaching it.
inline constexpr double kEndpointTolerance = 1e-9;

/// u from lambda via the boundary trajectory x(t, x0). The grid must start at 0
/// and increase strictly; x0 != lambda(0).
[[nodiscard]] Conversion halfplane_to_disk(const DrivingTerm& lambda, double x0,
                                           std::span<const double> t_grid,
                                           const SolverOptions& opt = {});

/// lambda from u via the boundary angle alpha(t, alpha0). Throws
/// ConversionDomainError when the reduced angle |alpha - u| reaches pi.
[[nodiscard]] Conversion disk_to_halfplane(const DrivingTerm& u, double alpha0,
                                           std::span<const double> t_grid,
                                           const SolverOptions& opt = {});

/// max over the grid of |tan((alpha - u)/2) - (x - lambda)/2|, using the grid
/// times before either trajectory is swallowed.
[[nodiscard]] double correspondence_residual(const DrivingTerm& lambda, const DrivingTerm& u,
                                             double x0, double alpha0,
                                             std::span<const double> t_grid,
                                             const SolverOptions& opt = {});

/// u(t) = 4 - 2 sqrt(1 - t) - 2 arctan(sqrt(1 - t)) on [0, 1], the disk
/// counterpart of lind(4) for x0 = alpha0 = 2.
[[nodiscard]] DrivingTerm converted_lind_term();

}  // namespace loewner::bridge
