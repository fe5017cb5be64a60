#include "loewner/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "loewner/disk.hpp"
#include "loewner/errors.hpp"
#include "loewner/halfplane.hpp"

namespace loewner::bridge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_grid(std::span<const double> grid, const char* who) {
  if (grid.empty() || grid.front() != 0.0)
    throw ArgumentError(std::string(who) + ": grid must start at t = 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw ArgumentError(std::string(who) + ": grid must increase strictly");
}

double sample_at(const BoundaryTrajectory& traj, std::size_t& cursor, double t) {
  while (cursor < traj.size() && traj.t[cursor] < t) ++cursor;
  if (cursor >= traj.size() || traj.t[cursor] != t)
    throw ArgumentError("trajectory has no sample at a grid time");
  return traj.value[cursor];
}

/// Grid times covered by the trajectory, and whether the swallowing (if any)
/// counts as happening at the last grid time.
struct Coverage {
  std::size_t count = 0;
  bool at_endpoint = false;
};

Coverage coverage(const BoundaryTrajectory& traj, std::span<const double> grid) {
  Coverage c{grid.size(), false};
  if (!traj.terminal.swallowed_at) return c;
  const double tau = *traj.terminal.swallowed_at;
  const double last = grid.back();
  if (tau >= last - kEndpointTolerance * std::max(1.0, std::abs(last))) {
    c.at_endpoint = true;
    c.count = grid.size() - 1;
    return c;
  }
  // A grid time just before tau may fall inside the step on which contact was
  // detected and then has no recorded sample.
  c.count = 0;
  while (c.count < grid.size() && grid[c.count] < tau &&
         std::binary_search(traj.t.begin(), traj.t.end(), grid[c.count]))
    ++c.count;
  return c;
}

Conversion finish(SampledTable table, std::optional<double> tau, bool partial) {
  DrivingTerm term = DrivingTerm::sampled(table);
  return Conversion{std::move(term), std::move(table), tau, partial};
}

}  // namespace

Conversion halfplane_to_disk(const DrivingTerm& lambda, double x0, std::span<const double> t_grid,
                             const SolverOptions& opt) {
  check_grid(t_grid, "halfplane_to_disk");
  const BoundaryTrajectory x = halfplane::evolve_boundary(lambda, x0, t_grid.back(), opt, t_grid);
  const Coverage cov = coverage(x, t_grid);

  SampledTable table;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < cov.count; ++i) {
    const double t = t_grid[i];
    const double xv = sample_at(x, cursor, t);
    table.t.push_back(t);
    table.value.push_back(xv - 2.0 * std::atan(0.5 * (xv - lambda(t))));
  }
  const auto tau = x.terminal.swallowed_at;
  if (tau) {
    // At contact x = lambda, so u = lambda.
    const double t_end = cov.at_endpoint ? t_grid.back() : *tau;
    if (table.t.empty() || t_end > table.t.back()) {
      table.t.push_back(t_end);
      table.value.push_back(lambda(t_end));
    }
  }
  return finish(std::move(table), tau, tau && !cov.at_endpoint);
}

Conversion disk_to_halfplane(const DrivingTerm& u, double alpha0, std::span<const double> t_grid,
                             const SolverOptions& opt) {
  check_grid(t_grid, "disk_to_halfplane");
  const double d0 = alpha0 - u(0.0);
  const double branch = kTwoPi * std::floor(d0 / kTwoPi);
  const bool above = d0 - branch < kPi;
  if (d0 - branch == kPi)
    throw ConversionDomainError("disk_to_halfplane: alpha0 is antipodal to u(0); tan((alpha - u)/2) is undefined");

  const BoundaryTrajectory alpha = disk::evolve_disk_boundary(u, alpha0, t_grid.back(), opt, t_grid);
  const Coverage cov = coverage(alpha, t_grid);

  SampledTable table;
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < cov.count; ++i) {
    const double t = t_grid[i];
    const double a = sample_at(alpha, cursor, t);
    const double d = a - u(t) - branch;
    if ((d < kPi) != above || d == kPi) {
      std::ostringstream os;
      os << "disk_to_halfplane: |alpha - u| reached pi at t=" << t;
      throw ConversionDomainError(os.str());
    }
    const double reduced = above ? d : d - kTwoPi;
    table.t.push_back(t);
    table.value.push_back(a - 2.0 * std::tan(0.5 * reduced));
  }
  const auto tau = alpha.terminal.swallowed_at;
  if (tau) {
    const double t_end = cov.at_endpoint ? t_grid.back() : *tau;
    if (table.t.empty() || t_end > table.t.back()) {
      table.t.push_back(t_end);
      table.value.push_back(alpha.back());
    }
  }
  return finish(std::move(table), tau, tau && !cov.at_endpoint);
}

double correspondence_residual(const DrivingTerm& lambda, const DrivingTerm& u, double x0,
                               double alpha0, std::span<const double> t_grid, const SolverOptions& opt) {
  check_grid(t_grid, "correspondence_residual");
  const BoundaryTrajectory x = halfplane::evolve_boundary(lambda, x0, t_grid.back(), opt, t_grid);
  const BoundaryTrajectory alpha = disk::evolve_disk_boundary(u, alpha0, t_grid.back(), opt, t_grid);
  const double tau = std::min(x.terminal.swallowed_at.value_or(INFINITY),
                              alpha.terminal.swallowed_at.value_or(INFINITY));
  double worst = 0.0;
  std::size_t cx = 0, ca = 0;
  for (double t : t_grid) {
    if (t >= tau || !std::binary_search(x.t.begin(), x.t.end(), t) ||
        !std::binary_search(alpha.t.begin(), alpha.t.end(), t))
      break;
    const double xv = sample_at(x, cx, t);
    const double av = sample_at(alpha, ca, t);
    const double r = std::tan(0.5 * (av - u(t))) - 0.5 * (xv - lambda(t));
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

DrivingTerm converted_lind_term() {
  return DrivingTerm::custom(
      "converted-lind",
      [](double t) {
        const double s = std::sqrt(std::max(0.0, 1.0 - t));
        return 4.0 - 2.0 * s - 2.0 * std::atan(s);
      },
      1.0);
}

}  // namespace loewner::bridge
