#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "loewner/trajectory.hpp"

namespace loewner {

/// Sample count above which holder_sup_norm switches from all pairs to the
/// dyadic pair subset.
inline constexpr std::size_t kAllPairsLimit = 5000;

/// Default exponent-fit window (t_min, t_max).
inline constexpr std::pair<double, double> kDefaultFitWindow{1e-6, 1e-3};

struct PowerLawFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  std::size_t points = 0;
};

struct HolderFit {
  double exponent = 0.0;
  double coefficient = 0.0;
  /// Sup-quotient over sample pairs, evaluated at `norm_exponent`.
  double sup_norm = 0.0;
  double norm_exponent = 0.0;
  /// Human-readable description of the pairs and window used.
  std::string grid;
};

/// max over sample pairs s < t of |f(t) - f(s)| / (t - s)^exponent.
///
/// Uses every pair up to kAllPairsLimit samples. Beyond that it scans pairs
/// whose index gap is a power of two plus all pairs anchored at the first or
/// last sample, which keeps the cost at O(n log n).
[[nodiscard]] double holder_sup_norm(std::span<const double> t, std::span<const double> f,
                                     double exponent);
[[nodiscard]] double holder_sup_norm(const BoundaryTrajectory& samples, double exponent);

/// Least-squares line through (log t, log |f(t) - f(0)|) over samples with
/// t in [window.first, window.second]. Requires a sample at t = 0.
[[nodiscard]] PowerLawFit power_law_fit(std::span<const double> t, std::span<const double> f,
                                        std::pair<double, double> window = kDefaultFitWindow);

/// power_law_fit restricted to Hölder exponents in (0, 1], together with the
/// sup-quotient norm of all samples at `norm_exponent` (the fitted exponent
/// when norm_exponent <= 0).
[[nodiscard]] HolderFit holder_exponent_fit(std::span<const double> t, std::span<const double> f,
                                            std::pair<double, double> window = kDefaultFitWindow,
                                            double norm_exponent = 0.0);
[[nodiscard]] HolderFit holder_exponent_fit(const BoundaryTrajectory& samples,
                                            std::pair<double, double> window = kDefaultFitWindow,
                                            double norm_exponent = 0.0);

}  // namespace loewner
