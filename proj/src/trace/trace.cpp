#include "loewner/trace.hpp"

#include <cmath>
#include <sstream>

#include "loewner/errors.hpp"
#include "loewner/halfplane.hpp"

namespace loewner::trace {

namespace {

struct BackwardField {
  const DrivingTerm& term;
  double t;
  double operator()(double u, const ComplexValue& s, ComplexValue& dsdu) const {
    const ComplexValue d = s - term(std::max(0.0, t - u));
    dsdu = -2.0 / d;
    return std::abs(d);
  }
};

/// Solves the 3x3 system for the constant term of a + b e^2 + c e^3.
ComplexValue extrapolate(const std::array<double, 3>& eps, const std::array<ComplexValue, 3>& v) {
  double m[3][3];
  for (int i = 0; i < 3; ++i) {
    m[i][0] = 1.0;
    m[i][1] = eps[i] * eps[i];
    m[i][2] = eps[i] * eps[i] * eps[i];
  }
  auto det3 = [](const double a[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double det = det3(m);
  if (det == 0.0 || !std::isfinite(det)) throw ArgumentError("trace: offsets must be distinct and non-zero");
  // Cramer's rule for the first unknown, separately for real and imaginary parts.
  auto solve = [&](auto part) {
    double a[3][3];
    for (int i = 0; i < 3; ++i) {
      a[i][0] = part(v[i]);
      a[i][1] = m[i][1];
      a[i][2] = m[i][2];
    }
    return det3(a) / det;
  };
  return {solve([](ComplexValue z) { return z.real(); }), solve([](ComplexValue z) { return z.imag(); })};
}

}  // namespace

ComplexValue backward_image(const DrivingTerm& term, double t, double eps, const SolverOptions& opt) {
  if (!(t >= 0.0) || t > term.t_max()) throw DomainError("trace: time outside the driving term's domain");
  if (!(eps > 0.0)) throw ArgumentError("trace: offset must be positive");
  const ComplexValue s0{term(t), eps};
  if (t == 0.0) return s0;
  const BackwardField field{term, t};
  const double end[] = {t};
  InteriorTrajectory traj;
  try {
    traj = ode::integrate(field, 0.0, s0, t, std::span<const double>(end), opt);
  } catch (const Error& e) {
    std::ostringstream os;
    os << "trace: backward integration failed at t=" << t << ": " << e.what();
    throw TraceError(os.str());
  }
  if (!traj.terminal.completed()) {
    std::ostringstream os;
    os << "trace: backward run met the driving point at t=" << t;
    throw TraceError(os.str());
  }
  return traj.back();
}

ComplexValue tip(const DrivingTerm& term, double t, const SolverOptions& opt, std::array<double, 3> eps) {
  if (t == 0.0) return {term(0.0), 0.0};
  std::array<ComplexValue, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = backward_image(term, t, eps[i], opt);
  const ComplexValue z = extrapolate(eps, v);
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw TraceError("trace: extrapolated tip is not finite");
  return z;
}

std::vector<TracePoint> extract_trace(const DrivingTerm& term, std::span<const double> t_grid,
                                      const SolverOptions& opt, std::array<double, 3> eps) {
  std::vector<TracePoint> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) out.push_back({t, tip(term, t, opt, eps)});
  return out;
}

ForwardCheck forward_consistency(const DrivingTerm& term, double t, ComplexValue z, const SolverOptions& opt) {
  if (!(z.imag() > 0.0)) throw ArgumentError("forward_consistency: the tip must lie in the upper half-plane");
  const InteriorTrajectory traj = halfplane::evolve_interior(term, z, t, opt);
  ForwardCheck c;
  c.swallowed = !traj.terminal.completed();
  c.stop_time = c.swallowed ? *traj.terminal.swallowed_at : t;
  c.distance = c.swallowed ? 0.0 : std::abs(traj.back() - term(t));
  c.closest = c.distance;
  for (std::size_t i = 0; i < traj.size(); ++i)
    c.closest = std::min(c.closest, std::abs(traj.value[i] - term(traj.t[i])));
  return c;
}

double collinearity_residual(std::span<const TracePoint> points) {
  if (points.empty()) return 0.0;
  const ComplexValue ref = points.back().tip;
  const double r = std::abs(ref);
  if (r == 0.0) throw ArgumentError("collinearity_residual: reference point is the origin");
  const ComplexValue dir = ref / r;
  double worst = 0.0;
  for (const auto& p : points) {
    const double off = std::abs((p.tip * std::conj(dir)).imag());
    worst = std::max(worst, off / r);
  }
  return worst;
}

}  // namespace loewner::trace
