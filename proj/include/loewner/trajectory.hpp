#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace loewner {

using ComplexValue = std::complex<double>;

/// How an integration ended.
struct Terminal {
  /// Set when the point was swallowed (collided with the driving point).
  std::optional<double> swallowed_at;

  [[nodiscard]] bool completed() const noexcept { return !swallowed_at.has_value(); }
};

/// Ordered (time, value) samples of a solution; times strictly increasing.
template <class Value>
struct Trajectory {
  std::vector<double> t;
  std::vector<Value> value;
  Terminal terminal;

  [[nodiscard]] std::size_t size() const noexcept { return t.size(); }
  [[nodiscard]] bool empty() const noexcept { return t.empty(); }
  [[nodiscard]] double back_time() const { return t.back(); }
  [[nodiscard]] const Value& back() const { return value.back(); }

  void push(double time, const Value& v) {
    t.push_back(time);
    value.push_back(v);
  }
};

using BoundaryTrajectory = Trajectory<double>;
using InteriorTrajectory = Trajectory<ComplexValue>;

/// Checks strictly increasing times and finite values; throws InvariantViolation.
void check_trajectory(const BoundaryTrajectory& traj);
void check_trajectory(const InteriorTrajectory& traj);

}  // namespace loewner
