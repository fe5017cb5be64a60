#include "loewner/holder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "loewner/errors.hpp"
#include "loewner/kernels/holder_scan.hpp"

namespace loewner {

namespace {

void check_samples(std::span<const double> t, std::span<const double> f) {
  if (t.size() != f.size()) throw ArgumentError("holder: time and value columns differ in length");
  if (t.size() < 2) throw ArgumentError("holder: at least two samples are required");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw ArgumentError("holder: sample times must be strictly increasing");
}

double dyadic_sup(std::span<const double> t, std::span<const double> f, double exponent) {
  const std::size_t n = t.size();
  double best = 0.0;
  for (std::size_t d = 1; d < n; d *= 2) best = std::max(best, kernels::offset_max(t, f, d, exponent));
  // Pairs anchored at either end.
  for (std::size_t j = 1; j < n; ++j) {
    best = std::max(best, std::abs(f[j] - f[0]) / std::pow(t[j] - t[0], exponent));
    const std::size_t i = n - 1 - j;
    best = std::max(best, std::abs(f[n - 1] - f[i]) / std::pow(t[n - 1] - t[i], exponent));
  }
  return best;
}

}  // namespace

double holder_sup_norm(std::span<const double> t, std::span<const double> f, double exponent) {
  check_samples(t, f);
  if (!(exponent > 0.0 && exponent <= 1.0)) throw ArgumentError("holder: exponent must lie in (0, 1]");
  if (t.size() <= kAllPairsLimit) return kernels::all_pairs_max(t, f, exponent);
  return dyadic_sup(t, f, exponent);
}

double holder_sup_norm(const BoundaryTrajectory& samples, double exponent) {
  return holder_sup_norm(samples.t, samples.value, exponent);
}

PowerLawFit power_law_fit(std::span<const double> t, std::span<const double> f,
                          std::pair<double, double> window) {
  if (t.size() != f.size()) throw FitError("power-law fit: columns differ in length");
  const auto [lo, hi] = window;
  if (!(lo > 0.0) || !(hi > lo)) throw FitError("power-law fit: window must satisfy 0 < t_min < t_max");
  const auto zero = std::find(t.begin(), t.end(), 0.0);
  if (zero == t.end()) throw FitError("power-law fit: samples must include t = 0");
  const double f0 = f[static_cast<std::size_t>(zero - t.begin())];

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t in_window = 0, used = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < lo || t[i] > hi) continue;
    ++in_window;
    const double df = std::abs(f[i] - f0);
    if (!(df > 0.0)) continue;
    const double x = std::log(t[i]);
    const double y = std::log(df);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++used;
  }
  if (in_window < 10) throw FitError("power-law fit: fewer than 10 samples inside the window");
  if (used < 2) throw FitError("power-law fit: values are identically f(0) on the window");
  const double n = static_cast<double>(used);
  const double denom = n * sxx - sx * sx;
  if (!(denom > 0.0)) throw FitError("power-law fit: degenerate abscissae");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  return {slope, std::exp(intercept), used};
}

HolderFit holder_exponent_fit(std::span<const double> t, std::span<const double> f,
                              std::pair<double, double> window, double norm_exponent) {
  check_samples(t, f);
  const PowerLawFit fit = power_law_fit(t, f, window);
  if (!(fit.exponent > 0.0 && fit.exponent <= 1.0 + 1e-9)) {
    std::ostringstream os;
    os << "holder fit: fitted exponent " << fit.exponent << " is outside (0, 1]";
    throw FitError(os.str());
  }
  HolderFit out;
  out.exponent = std::min(fit.exponent, 1.0);
  out.coefficient = fit.coefficient;
  out.norm_exponent = norm_exponent > 0.0 ? norm_exponent : out.exponent;
  out.sup_norm = holder_sup_norm(t, f, out.norm_exponent);
  std::ostringstream os;
  os << fit.points << " points in [" << window.first << ", " << window.second << "]; "
     << (t.size() <= kAllPairsLimit ? "all " : "dyadic ") << "pairs of " << t.size() << " samples";
  out.grid = os.str();
  return out;
}

HolderFit holder_exponent_fit(const BoundaryTrajectory& samples, std::pair<double, double> window,
                              double norm_exponent) {
  return holder_exponent_fit(samples.t, samples.value, window, norm_exponent);
}

}  // namespace loewner
