#pragma once

#include <array>
#include <span>
#include <vector>

#include "loewner/driving_term.hpp"
#include "loewner/ode.hpp"
#include "loewner/trajectory.hpp"

// Slit reconstruction: the tip gamma(t) = h_t^{-1}(lambda(t)) is obtained by
// running the half-plane flow backwards from just above the driving point,
//   ds/du = -2 / (s - lambda(t - u)),  s(0) = lambda(t) + i eps,  u in [0, t],
// and extrapolating eps -> 0.

namespace loewner::trace {

/// Regularisation offsets used for the extrapolation.
inline constexpr std::array<double, 3> kDefaultEpsilons{1e-3, 5e-4, 2.5e-4};

struct TracePoint {
  double t = 0.0;
  ComplexValue tip;
};

/// Backward image of lambda(t) + i eps for a single eps.
[[nodiscard]] ComplexValue backward_image(const DrivingTerm& term, double t, double eps,
                                          const SolverOptions& opt = {});

/// Tip at time t, extrapolated from the three offsets with the model
/// a + b eps^2 + c eps^3. The tip at t = 0 is lambda(0). Throws TraceError if
/// any backward run fails.
[[nodiscard]] ComplexValue tip(const DrivingTerm& term, double t, const SolverOptions& opt = {},
                               std::array<double, 3> eps = kDefaultEpsilons);

[[nodiscard]] std::vector<TracePoint> extract_trace(const DrivingTerm& term,
                                                    std::span<const double> t_grid,
                                                    const SolverOptions& opt = {},
                                                    std::array<double, 3> eps = kDefaultEpsilons);

/// Forward flow of a computed tip up to t.
struct ForwardCheck {
  /// Time at which the forward run stopped: t, or the swallowing time.
  double stop_time = 0.0;
  /// |h - lambda| at stop_time (zero when swallowed).
  double distance = 0.0;
  /// Smallest |h - lambda| over the recorded forward samples.
  double closest = 0.0;
  bool swallowed = false;
};

[[nodiscard]] ForwardCheck forward_consistency(const DrivingTerm& term, double t, ComplexValue tip,
                                               const SolverOptions& opt = {});

/// Largest distance of the points from the line through the origin and the
/// last point, relative to that point's modulus.
[[nodiscard]] double collinearity_residual(std::span<const TracePoint> points);

}  // namespace loewner::trace
