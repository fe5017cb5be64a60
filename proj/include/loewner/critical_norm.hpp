#pragma once

#include <optional>
#include <span>
#include <vector>

#include "loewner/ode.hpp"

// The recursion g_1(y) = y - 4/y, g_n(y) = y - 4/g_{n-1}(y), its zeros y_n,
// the iteration c_{n+1} = c - 4/((1 + eps) c_n), and the collision
// experiment for the family lambda_c(t) = c - c sqrt(1 - t).

namespace loewner::critical {

struct RecursionState {
  int n = 0;
  double value = 0.0;
};

/// g_n(y). Throws PoleError when y or an intermediate g_k(y), k < n, vanishes
/// to within a few ulps of y.
[[nodiscard]] double g_eval(int n, double y);

/// The zero of g_n in (y_{n-1}, 4), y_0 = 0, by bisection to machine precision.
[[nodiscard]] double y_zero(int n);

/// y_1, ..., y_n.
[[nodiscard]] std::vector<RecursionState> y_sequence(int n);

enum class Verdict { stays_positive, crosses_zero };

struct CIteration {
  std::vector<RecursionState> states;  ///< c_0 = c, c_1, ...
  Verdict verdict = Verdict::stays_positive;
  std::optional<int> crossing_index;   ///< first n with c_n <= 0
};

/// Runs the iteration through n_max or until the first non-positive c_n.
[[nodiscard]] CIteration c_iteration(double c, double eps = 1e-6, int n_max = 1000);

/// c_n, g_n((1 + eps) c) and (1 + eps) c_n for one (c, eps, n).
struct BoundSample {
  double c = 0.0;
  double eps = 0.0;
  int n = 0;
  double c_n = 0.0;
  double g_n = 0.0;
  double scaled_c_n = 0.0;
  [[nodiscard]] bool lower_holds() const { return c_n < g_n; }
  [[nodiscard]] bool upper_holds() const { return g_n < scaled_c_n; }
};

[[nodiscard]] BoundSample bound_sample(double c, double eps, int n);

/// Smallest c allowed by the iteration staying positive for a given eps.
[[nodiscard]] inline double lemma_lower_bound(double eps) { return 4.0 / (1.0 + eps); }

/// Collisions count up to this far past t = 1.
inline constexpr double kEndpointBand = 1e-3;

struct ThresholdRow {
  double c = 0.0;
  bool collides = false;
  std::optional<double> first_collision_t;
  std::optional<double> x0;  ///< the first colliding start point
};

struct ThresholdExperiment {
  std::vector<ThresholdRow> rows;
  std::optional<double> threshold;  ///< smallest colliding c on the grid
  bool monotone = true;             ///< no colliding c followed by a non-colliding larger c
};

/// 200 geometric points in [lambda(0) + 1e-3, lambda(0) + 20].
[[nodiscard]] std::vector<double> default_x0_grid();

/// c from c_lo to c_hi in steps of `step`, endpoints included.
[[nodiscard]] std::vector<double> c_grid(double c_lo, double c_hi, double step);

/// For each c (sorted), scans x0 in increasing order and stops at the first
/// collision at or before 1 + kEndpointBand.
[[nodiscard]] ThresholdExperiment collision_threshold_experiment(std::span<const double> c_grid,
                                                                 std::span<const double> x0_grid,
                                                                 const SolverOptions& opt = {});

/// Grid on [0, 1] for converting lambda_c: uniform plus points clustering at 1.
[[nodiscard]] std::vector<double> conversion_grid();

/// Converts lambda_c to a disk term along x(t, x0) and evolves alpha0 = x0 under
/// it; true when the angle meets u by 1 + kEndpointBand.
[[nodiscard]] bool disk_side_collides(double c, double x0, const SolverOptions& opt = {});

}  // namespace loewner::critical
