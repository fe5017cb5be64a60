#include "loewner/trajectory.hpp"

#include <cmath>
#include <string>

#include "loewner/errors.hpp"
#include "loewner/ode.hpp"

namespace loewner {

namespace {

template <class V>
void check_impl(const Trajectory<V>& traj) {
  if (traj.t.size() != traj.value.size())
    throw InvariantViolation("trajectory columns differ in length");
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    if (!ode::finite(traj.value[i]) || !std::isfinite(traj.t[i]))
      throw InvariantViolation("trajectory holds a non-finite sample at index " + std::to_string(i));
    if (i > 0 && !(traj.t[i] > traj.t[i - 1]))
      throw InvariantViolation("trajectory times not strictly increasing at index " + std::to_string(i));
  }
}

}  // namespace

void check_trajectory(const BoundaryTrajectory& traj) { check_impl(traj); }
void check_trajectory(const InteriorTrajectory& traj) { check_impl(traj); }

void SolverOptions::validate() const {
  if (!(tol > 0.0)) throw ArgumentError("solver tolerance must be positive");
  if (!(collision_threshold > 0.0)) throw ArgumentError("collision threshold must be positive");
  if (!(min_step > 0.0)) throw ArgumentError("minimum step must be positive");
  if (!(contact_horizon >= 0.0)) throw ArgumentError("contact horizon must be non-negative");
  if (max_steps == 0) throw ArgumentError("max_steps must be positive");
}

}  // namespace loewner
