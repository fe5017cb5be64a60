#include "loewner/disk.hpp"

#include <cmath>
#include <numbers>

#include "loewner/errors.hpp"

namespace loewner::disk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct InteriorField {
  const DrivingFn& u;
  double operator()(double t, const ComplexValue& w, ComplexValue& dwdt) const {
    const ComplexValue e = std::polar(1.0, u(t));
    const ComplexValue d = e - w;
    dwdt = w * (e + w) / d;
    return std::abs(d);
  }
};

struct AngleField {
  const DrivingFn& u;
  double branch;  // 2 pi k
  double operator()(double t, const double& alpha, double& dadt) const {
    const double d = alpha - u(t) - branch;
    dadt = 1.0 / std::tan(0.5 * d);
    return std::min(d, kTwoPi - d);
  }
};

void check_times(double t_end, std::span<const double> times, const char* who) {
  if (!(t_end >= 0.0)) throw ArgumentError(std::string(who) + ": t_end must be non-negative");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (!(times[i] >= 0.0) || (i > 0 && !(times[i] > times[i - 1])))
      throw ArgumentError(std::string(who) + ": output times must be non-negative and increasing");
}

}  // namespace

InteriorTrajectory evolve_disk_interior(const DrivingFn& u, ComplexValue z0, double t_end,
                                        const SolverOptions& opt, std::span<const double> output_times) {
  if (!(std::abs(z0) < 1.0)) throw ArgumentError("evolve_disk_interior: start point must satisfy |z0| < 1");
  check_times(t_end, output_times, "evolve_disk_interior");
  if (z0 == ComplexValue{}) {
    opt.validate();
    InteriorTrajectory out;
    out.push(0.0, z0);
    if (output_times.empty()) {
      if (t_end > 0.0) out.push(t_end, z0);
    } else {
      for (double t : output_times)
        if (t > 0.0 && t < t_end) out.push(t, z0);
      if (t_end > 0.0) out.push(t_end, z0);
    }
    return out;
  }
  const InteriorField field{u};
  return ode::integrate(field, 0.0, z0, t_end, output_times, opt);
}

InteriorTrajectory evolve_disk_interior(const DrivingTerm& term, ComplexValue z0, double t_end,
                                        const SolverOptions& opt, std::span<const double> output_times) {
  return evolve_disk_interior(DrivingFn([term](double t) { return term(t); }), z0, t_end, opt,
                              output_times);
}

BoundaryTrajectory evolve_disk_boundary(const DrivingFn& u, double alpha0, double t_end,
                                        const SolverOptions& opt, std::span<const double> output_times) {
  check_times(t_end, output_times, "evolve_disk_boundary");
  if (!std::isfinite(alpha0)) throw ArgumentError("evolve_disk_boundary: alpha0 must be finite");
  const double d0 = alpha0 - u(0.0);
  const double branch = kTwoPi * std::floor(d0 / kTwoPi);
  const double rel = d0 - branch;
  if (!(rel > 0.0) || !(rel < kTwoPi))
    throw ArgumentError("evolve_disk_boundary: alpha0 coincides with u(0) modulo 2 pi");
  const AngleField field{u, branch};
  return ode::integrate(field, 0.0, alpha0, t_end, output_times, opt);
}

BoundaryTrajectory evolve_disk_boundary(const DrivingTerm& term, double alpha0, double t_end,
                                        const SolverOptions& opt, std::span<const double> output_times) {
  return evolve_disk_boundary(DrivingFn([term](double t) { return term(t); }), alpha0, t_end, opt,
                              output_times);
}

}  // namespace loewner::disk
