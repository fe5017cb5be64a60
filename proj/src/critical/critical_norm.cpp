#include "loewner/critical_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "loewner/bridge.hpp"
#include "loewner/disk.hpp"
#include "loewner/driving_term.hpp"
#include "loewner/errors.hpp"
#include "loewner/halfplane.hpp"

namespace loewner::critical {

namespace {

constexpr double kPoleTol = 8.0 * std::numeric_limits<double>::epsilon();

}  // namespace

double g_eval(int n, double y) {
  if (n < 1) throw ArgumentError("g_eval: index must be at least 1");
  const double scale = std::max(1.0, std::abs(y));
  if (std::abs(y) <= kPoleTol * scale) throw PoleError("g_eval: pole at y = 0");
  double g = y - 4.0 / y;
  for (int k = 2; k <= n; ++k) {
    if (std::abs(g) <= kPoleTol * scale) {
      std::ostringstream os;
      os << "g_eval: y = " << y << " is a zero of g_" << k - 1 << " (pole of g_" << n << ")";
      throw PoleError(os.str());
    }
    g = y - 4.0 / g;
  }
  return g;
}

std::vector<RecursionState> y_sequence(int n) {
  if (n < 1) throw ArgumentError("y_sequence: index must be at least 1");
  std::vector<RecursionState> out;
  double left = 0.0;
  for (int k = 1; k <= n; ++k) {
    double lo = left, hi = 4.0;
    if (!(g_eval(k, hi) > 0.0)) throw RootError("y_zero: g_n(4) is not positive");
    // g_k increases from -infinity on (y_{k-1}, 4]; the left end is never evaluated.
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double g = g_eval(k, mid);
      if (g > 0.0) hi = mid;
      else lo = mid;
    }
    const double y = 0.5 * (lo + hi);
    if (!(y > left)) throw RootError("y_zero: zero not bracketed above the previous zero");
    out.push_back({k, y});
    left = y;
  }
  return out;
}

double y_zero(int n) { return y_sequence(n).back().value; }

CIteration c_iteration(double c, double eps, int n_max) {
  if (!(c > 0.0)) throw ArgumentError("c_iteration: c must be positive");
  if (!(eps >= 0.0)) throw ArgumentError("c_iteration: eps must be non-negative");
  if (n_max < 0) throw ArgumentError("c_iteration: n_max must be non-negative");
  CIteration r;
  double cn = c;
  r.states.push_back({0, cn});
  for (int n = 1; n <= n_max; ++n) {
    cn = c - 4.0 / ((1.0 + eps) * cn);
    r.states.push_back({n, cn});
    if (!(cn > 0.0)) {
      r.verdict = Verdict::crosses_zero;
      r.crossing_index = n;
      break;
    }
  }
  return r;
}

BoundSample bound_sample(double c, double eps, int n) {
  BoundSample s;
  s.c = c;
  s.eps = eps;
  s.n = n;
  const CIteration it = c_iteration(c, eps, n);
  if (it.verdict == Verdict::crosses_zero) throw ArgumentError("bound_sample: the iteration left (0, inf)");
  s.c_n = it.states.back().value;
  s.g_n = g_eval(n, (1.0 + eps) * c);
  s.scaled_c_n = (1.0 + eps) * s.c_n;
  return s;
}

std::vector<double> default_x0_grid() {
  constexpr int kPoints = 200;
  std::vector<double> g(kPoints);
  const double lo = std::log(1e-3), hi = std::log(20.0);
  for (int i = 0; i < kPoints; ++i) g[i] = std::exp(lo + (hi - lo) * i / (kPoints - 1));
  g.back() = 20.0;
  return g;
}

std::vector<double> c_grid(double c_lo, double c_hi, double step) {
  if (!(step > 0.0) || !(c_hi >= c_lo)) throw ArgumentError("c_grid: need c_lo <= c_hi and step > 0");
  std::vector<double> g;
  const int n = static_cast<int>(std::floor((c_hi - c_lo) / step + 0.5));
  for (int i = 0; i <= n; ++i) g.push_back(c_lo + step * i);
  return g;
}

ThresholdExperiment collision_threshold_experiment(std::span<const double> cs,
                                                   std::span<const double> x0s,
                                                   const SolverOptions& opt) {
  if (!std::is_sorted(cs.begin(), cs.end())) throw ArgumentError("threshold experiment: c grid must be sorted");
  std::vector<double> starts(x0s.begin(), x0s.end());
  std::sort(starts.begin(), starts.end());
  ThresholdExperiment ex;
  for (double c : cs) {
    if (!(c > 0.0)) throw ArgumentError("threshold experiment: c must be positive");
    const DrivingTerm lambda = DrivingTerm::lind(c);
    const double l0 = lambda(0.0);
    ThresholdRow row;
    row.c = c;
    for (double x0 : starts) {
      if (!(x0 > l0)) throw ArgumentError("threshold experiment: start points must lie right of lambda(0)");
      const BoundaryTrajectory x = halfplane::evolve_boundary(lambda, x0, 1.0, opt, std::span<const double>{});
      if (x.terminal.swallowed_at && *x.terminal.swallowed_at <= 1.0 + kEndpointBand) {
        row.collides = true;
        row.first_collision_t = x.terminal.swallowed_at;
        row.x0 = x0;
        break;
      }
    }
    if (row.collides && !ex.threshold) ex.threshold = c;
    if (!row.collides && ex.threshold) ex.monotone = false;
    ex.rows.push_back(row);
  }
  return ex;
}

std::vector<double> conversion_grid() {
  std::vector<double> g;
  constexpr int kUniform = 2000;
  for (int i = 0; i < kUniform; ++i) g.push_back(static_cast<double>(i) / kUniform);
  for (double k = 3.5; k <= 15.0; k += 0.25) g.push_back(1.0 - std::pow(10.0, -k));
  g.push_back(1.0);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

bool disk_side_collides(double c, double x0, const SolverOptions& opt) {
  const DrivingTerm lambda = DrivingTerm::lind(c);
  const std::vector<double> grid = conversion_grid();
  const bridge::Conversion u = bridge::halfplane_to_disk(lambda, x0, grid, opt);
  const double t_end = u.table.t.back();
  const BoundaryTrajectory alpha = disk::evolve_disk_boundary(u.term, x0, t_end, opt, std::span<const double>{});
  return alpha.terminal.swallowed_at && *alpha.terminal.swallowed_at <= 1.0 + kEndpointBand;
}

}  // namespace loewner::critical
