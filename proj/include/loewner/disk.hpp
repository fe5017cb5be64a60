#pragma once

#include <functional>
#include <span>

#include "loewner/driving_term.hpp"
#include "loewner/ode.hpp"
#include "loewner/trajectory.hpp"

// Radial Löwner flow on the unit disk in the map-out convention
//   dw/dt = w (e^{iu} + w) / (e^{iu} - w),   w(z, 0) = z,
// and the induced equation for boundary angles,
//   d alpha/dt = cot((alpha - u(t)) / 2).

namespace loewner::disk {

using DrivingFn = std::function<double(double)>;

/// Interior point |z0| < 1 evolved to t_end. z0 = 0 is a fixed point.
/// Contact with e^{iu} ends the trajectory as swallowed.
[[nodiscard]] InteriorTrajectory evolve_disk_interior(const DrivingTerm& term, ComplexValue z0,
                                                      double t_end, const SolverOptions& opt = {},
                                                      std::span<const double> output_times = {});
[[nodiscard]] InteriorTrajectory evolve_disk_interior(const DrivingFn& u, ComplexValue z0,
                                                      double t_end, const SolverOptions& opt = {},
                                                      std::span<const double> output_times = {});

/// Boundary angle alpha0 (alpha0 != u(0) mod 2 pi) evolved to t_end.
///
/// The angle is kept unwrapped. The branch k with alpha0 - u(0) - 2 pi k in (0, 2 pi)
/// is fixed at the start; contact is the distance of alpha - u - 2 pi k to
/// either end of that interval falling below the collision threshold.
[[nodiscard]] BoundaryTrajectory evolve_disk_boundary(const DrivingTerm& term, double alpha0,
                                                      double t_end, const SolverOptions& opt = {},
                                                      std::span<const double> output_times = {});
[[nodiscard]] BoundaryTrajectory evolve_disk_boundary(const DrivingFn& u, double alpha0,
                                                      double t_end, const SolverOptions& opt = {},
                                                      std::span<const double> output_times = {});

}  // namespace loewner::disk
