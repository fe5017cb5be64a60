#include "loewner/repro.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "loewner/bridge.hpp"
#include "loewner/critical_norm.hpp"
#include "loewner/disk.hpp"
#include "loewner/errors.hpp"
#include "loewner/halfplane.hpp"
#include "loewner/holder.hpp"
#include "loewner/tangent_slit.hpp"
#include "loewner/trace.hpp"

namespace loewner::repro {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(static_cast<std::size_t>(points));
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / (points - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> uniform_grid(double lo, double hi, int intervals) {
  std::vector<double> g;
  for (int i = 0; i <= intervals; ++i) g.push_back(lo + (hi - lo) * i / intervals);
  g.back() = hi;
  return g;
}

double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

/// Closed-form flow for lambda = 0, Im >= 0 branch.
std::complex<double> flat_flow(std::complex<double> z, double t) {
  std::complex<double> w = std::sqrt(z * z + 4.0 * t);
  if (w.imag() < 0.0) w = -w;
  return w;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ---- 1 ----------------------------------------------------------------

CriterionResult c1() {
  CriterionResult r{1, "closed-form half-plane flow for lambda = 0", false, {}, 0.0};
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.1, 3.0);
  const DrivingTerm zero = DrivingTerm::constant(0.0);
  const double times[] = {0.1, 0.5, 2.0};
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::complex<double> z{re(rng), im(rng)};
    const InteriorTrajectory traj = halfplane::evolve_interior(zero, z, 2.0, {}, times);
    for (std::size_t k = 0; k < 3; ++k) {
      if (traj.size() != 4 || traj.t[k + 1] != times[k])
        throw InvariantViolation("trajectory lost a requested sample");
      worst = std::max(worst, rel_err(traj.value[k + 1], flat_flow(z, times[k])));
    }
  }
  r.passed = worst <= 1e-8;
  r.detail = "max relative error " + num(worst) + " over 60 samples (limit 1e-8)";
  return r;
}

// ---- 2 ----------------------------------------------------------------

CriterionResult c2() {
  CriterionResult r{2, "boundary trajectory x(t, 2) under lind(4)", false, {}, 0.0};
  const DrivingTerm lambda = DrivingTerm::lind(4.0);
  const std::vector<double> grid = uniform_grid(0.0, 0.999, 999);
  const BoundaryTrajectory x = halfplane::evolve_boundary(lambda, 2.0, 1.0, {}, grid);
  double worst = 0.0;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.t[i] > 0.999) continue;
    ++seen;
    worst = std::max(worst, std::abs(x.value[i] - (4.0 - 2.0 * std::sqrt(1.0 - x.t[i]))));
  }
  const bool swallowed = x.terminal.swallowed_at.has_value();
  const double tau = x.terminal.swallowed_at.value_or(NAN);
  r.passed = seen == grid.size() && worst <= 1e-6 && swallowed && std::abs(tau - 1.0) <= 1e-3;
  r.detail = "max error " + num(worst) + " on [0, 0.999] (limit 1e-6); swallowed at " +
             (swallowed ? num(tau) : std::string("never")) + " (limit 1 +- 1e-3)";
  return r;
}

// ---- 3 ----------------------------------------------------------------

CriterionResult c3() {
  CriterionResult r{3, "sharp ratio h+/sqrt(t) for lambda = c sqrt(t)", false, {}, 0.0};
  const std::vector<double> grid = log_grid(1e-6, 1.0, 61);
  double worst = 0.0;
  std::ostringstream os;
  for (double c : {0.0, 1.0, 4.0}) {
    const halfplane::RatioDiagnostic d = halfplane::ratio_limsup_check(DrivingTerm::sqrt_forward(c), c, grid);
    double w = 0.0;
    for (double phi : d.ratio) w = std::max(w, std::abs(phi / d.bound - 1.0));
    worst = std::max(worst, w);
    os << "c=" << c << ": A=" << num(d.bound) << " max rel " << num(w) << "; ";
  }
  r.passed = worst <= 1e-4;
  r.detail = os.str() + "limit 1e-4";
  return r;
}

// ---- 4 ----------------------------------------------------------------

CriterionResult c4() {
  CriterionResult r{4, "tangent-slit driving term exponents", false, {}, 0.0};
  std::vector<double> t{0.0}, lambda{0.0}, alpha{0.0}, beta{0.0};
  for (double s : log_grid(1e-14, 1e-6, 321)) {
    const tangent::SlitParams p = tangent::solve_params(s);
    t.push_back(s);
    lambda.push_back(p.gamma_prevertex);
    alpha.push_back(p.alpha);
    beta.push_back(p.beta);
  }
  const std::pair<double, double> window{1e-12, 1e-8};
  const HolderFit fl = holder_exponent_fit(t, lambda, window);
  const PowerLawFit fa = power_law_fit(t, alpha, window);
  const PowerLawFit fb = power_law_fit(t, beta, window);
  const double target = std::cbrt(12.0 * std::numbers::pi);
  const double coef_dev = std::abs(fl.coefficient / target - 1.0);
  const double da = std::abs(fa.exponent - 2.0 / 3.0);
  const double db = std::abs(fb.exponent - 1.0 / 3.0);
  r.passed = fl.exponent >= 0.32 && fl.exponent <= 0.345 && coef_dev <= 0.02 && da <= 1e-3 && db <= 1e-3;
  r.detail = "lambda exponent " + num(fl.exponent) + " in [0.32, 0.345]; coefficient " + num(fl.coefficient) +
             " vs " + num(target) + " (dev " + num(coef_dev) + ", limit 0.02); alpha exponent " +
             num(fa.exponent) + ", beta exponent " + num(fb.exponent) + " (limit 1e-3); fit window [1e-12, 1e-8]";
  return r;
}

// ---- 5 ----------------------------------------------------------------

CriterionResult c5() {
  CriterionResult r{5, "singular solutions reproduce the tangent-slit prevertices", false, {}, 0.0};
  const DrivingTerm term = DrivingTerm::tangent_circular(1.0);
  std::vector<double> grid = log_grid(1e-6, 1e-3, 31);
  const std::vector<halfplane::SwallowedInterval> iv = halfplane::swallowed_interval(term, grid);
  double worst = 0.0;
  for (const auto& v : iv) {
    const tangent::SlitParams p = tangent::solve_params(v.t);
    worst = std::max({worst, std::abs(v.lower / p.alpha - 1.0), std::abs(v.upper / p.beta - 1.0)});
  }
  r.passed = worst <= 1e-2;
  r.detail = "max relative deviation " + num(worst) + " for t in [1e-6, 1e-3] (limit 1e-2)";
  return r;
}

// ---- 6 ----------------------------------------------------------------

CriterionResult c6() {
  CriterionResult r{6, "reconstructed tangent slit lies on |z - i| = 1", false, {}, 0.0};
  const DrivingTerm term = DrivingTerm::tangent_circular(1.0);
  const std::vector<double> grid = log_grid(1e-4, 0.02, 12);
  const std::vector<trace::TracePoint> tips = trace::extract_trace(term, grid);
  double worst = 0.0;
  for (const auto& p : tips) worst = std::max(worst, std::abs(std::abs(p.tip - std::complex<double>(0.0, 1.0)) - 1.0));
  r.passed = worst <= 1e-2;
  r.detail = "max | |tip - i| - 1 | = " + num(worst) + " over 12 times in [1e-4, 0.02] (limit 1e-2)";
  return r;
}

// ---- 7 ----------------------------------------------------------------

CriterionResult c7() {
  CriterionResult r{7, "disk/half-plane correspondence on the Lind pair", false, {}, 0.0};
  const DrivingTerm lambda = DrivingTerm::lind(4.0);
  const DrivingTerm u = bridge::converted_lind_term();
  const std::vector<double> grid = uniform_grid(0.0, 0.999, 999);
  const double residual = bridge::correspondence_residual(lambda, u, 2.0, 2.0, grid);

  const std::vector<double> fine = critical::conversion_grid();
  const bridge::Conversion conv = bridge::halfplane_to_disk(lambda, 2.0, fine);
  double pointwise = 0.0;
  for (std::size_t i = 0; i < conv.table.t.size(); ++i)
    pointwise = std::max(pointwise, std::abs(conv.table.value[i] - u(conv.table.t[i])));
  const double norm = holder_sup_norm(conv.table.t, conv.table.value, 0.5);
  const bool full = !conv.partial && conv.table.t.back() == 1.0;
  r.passed = residual <= 1e-6 && pointwise <= 1e-6 && std::abs(norm - 4.0) <= 0.01 && full;
  r.detail = "identity residual " + num(residual) + " on [0, 0.999]; converted u max error " + num(pointwise) +
             " (limits 1e-6); ||u||_1/2 estimate " + num(norm) + " (limit 4 +- 0.01)" +
             (full ? "" : "; conversion did not reach t = 1");
  return r;
}

// ---- 8 ----------------------------------------------------------------

CriterionResult c8() {
  CriterionResult r{8, "zeros y_n of the g_n recursion", false, {}, 0.0};
  const std::vector<critical::RecursionState> ys = critical::y_sequence(50);
  bool increasing = true;
  for (std::size_t i = 1; i < ys.size(); ++i) increasing = increasing && ys[i].value > ys[i - 1].value;
  const double e1 = std::abs(ys[0].value - 2.0);
  const double e2 = std::abs(ys[1].value - 2.0 * std::numbers::sqrt2);
  const double y50 = ys.back().value;
  r.passed = e1 <= 1e-10 && e2 <= 1e-10 && increasing && y50 > 3.99 && y50 < 4.0;
  r.detail = "|y1 - 2| = " + num(e1) + ", |y2 - 2 sqrt 2| = " + num(e2) + " (limit 1e-10); " +
             (increasing ? "strictly increasing" : "NOT increasing") + "; y50 = " + num(y50);
  return r;
}

// ---- 9 ----------------------------------------------------------------

CriterionResult c9() {
  CriterionResult r{9, "collision threshold for lambda_c = c - c sqrt(1 - t)", false, {}, 0.0};
  const std::vector<double> cs = critical::c_grid(3.5, 4.5, 0.05);
  const critical::ThresholdExperiment ex = critical::collision_threshold_experiment(cs, critical::default_x0_grid());
  const bool found = ex.threshold.has_value();
  const double c_star = ex.threshold.value_or(NAN);
  r.passed = found && c_star >= 3.9 && c_star <= 4.1 && ex.monotone;
  r.detail = "c* = " + (found ? num(c_star) : std::string("none")) + " on 3.5:0.05:4.5 (limit [3.9, 4.1]); verdicts " +
             (ex.monotone ? "monotone" : "NOT monotone");
  return r;
}

// ---- 10 ---------------------------------------------------------------

CriterionResult c10() {
  CriterionResult r{10, "randomized property suites", true, {}, 0.0};
  std::ostringstream os;
  for (const PropertyReport& p : {scaling_covariance(), ordering_preservation(), monotone_escape(), rotation_equivariance()}) {
    r.passed = r.passed && p.passed() && p.cases >= kPropertyCases;
    os << p.name << " " << (p.cases - p.failures) << "/" << p.cases;
    if (!p.first_failure.empty()) os << " (" << p.first_failure << ")";
    os << "; ";
  }
  r.detail = os.str() + "seed " + std::to_string(kSeed);
  return r;
}

// ---- random inputs ----------------------------------------------------

/// Random member of the built-in families with a domain covering [0, 0.9].
DrivingTerm random_term(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> param(-4.0, 4.0);
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return DrivingTerm::constant(param(rng));
    case 1:
      return DrivingTerm::sqrt_forward(param(rng));
    default:
      return DrivingTerm::lind(param(rng));
  }
}

void note_failure(PropertyReport& rep, const std::string& what) {
  ++rep.failures;
  if (rep.first_failure.empty()) rep.first_failure = what;
}

}  // namespace

PropertyReport scaling_covariance(int cases, std::uint64_t seed) {
  PropertyReport rep{"scaling covariance", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed ^ 0x1ULL);
  std::uniform_real_distribution<double> radius(0.25, 4.0), re(-3.0, 3.0), im(0.2, 3.0), time(0.05, 0.9);
  for (int i = 0; i < cases; ++i) {
    ++rep.cases;
    const DrivingTerm lambda = random_term(rng);
    const double rr = radius(rng);
    const std::complex<double> z{re(rng), im(rng)};
    const double t = time(rng);
    const DrivingTerm scaled = DrivingTerm::custom(
        "scaled", [lambda, rr](double s) { return rr * lambda(std::min(s / (rr * rr), lambda.t_max())); },
        rr * rr * lambda.t_max());
    try {
      const InteriorTrajectory a = halfplane::evolve_interior(lambda, z, t);
      const InteriorTrajectory b = halfplane::evolve_interior(scaled, rr * z, rr * rr * t);
      double defect = 0.0;
      if (a.terminal.completed() && b.terminal.completed()) {
        defect = rel_err(b.back(), rr * a.back());
      } else if (!a.terminal.completed() && !b.terminal.completed()) {
        defect = std::abs(*b.terminal.swallowed_at - rr * rr * *a.terminal.swallowed_at) / (rr * rr);
      } else {
        defect = INFINITY;
      }
      rep.worst = std::max(rep.worst, defect);
      if (!(defect <= 1e-8)) note_failure(rep, "defect " + num(defect) + " for " + lambda.describe());
    } catch (const Error& e) {
      note_failure(rep, e.what());
    }
  }
  return rep;
}

PropertyReport ordering_preservation(int cases, std::uint64_t seed) {
  PropertyReport rep{"ordering preservation", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed ^ 0x2ULL);
  std::uniform_real_distribution<double> gap(0.01, 3.0), sep(1e-4, 2.0), time(0.1, 0.9);
  std::bernoulli_distribution right(0.5);
  for (int i = 0; i < cases; ++i) {
    ++rep.cases;
    const DrivingTerm lambda = random_term(rng);
    const double l0 = lambda(0.0);
    const double side = right(rng) ? 1.0 : -1.0;
    const double a0 = l0 + side * gap(rng);
    const double b0 = a0 + side * sep(rng);
    const double lo0 = std::min(a0, b0), hi0 = std::max(a0, b0);
    const double t_end = time(rng);
    const std::vector<double> grid = uniform_grid(0.0, t_end, 200);
    try {
      const BoundaryTrajectory lo = halfplane::evolve_boundary(lambda, lo0, t_end, {}, grid);
      const BoundaryTrajectory hi = halfplane::evolve_boundary(lambda, hi0, t_end, {}, grid);
      const std::size_t n = std::min(lo.size(), hi.size());
      bool ok = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (lo.t[k] != hi.t[k]) break;  // a swallowing sample ends the common grid
        if (!lo.terminal.completed() && k + 1 == lo.size()) break;
        if (!hi.terminal.completed() && k + 1 == hi.size()) break;
        const double margin = hi.value[k] - lo.value[k];
        if (!(margin > 0.0)) {
          ok = false;
          rep.worst = std::max(rep.worst, -margin);
        }
      }
      if (!ok) note_failure(rep, "order lost under " + lambda.describe());
    } catch (const Error& e) {
      note_failure(rep, e.what());
    }
  }
  return rep;
}

PropertyReport monotone_escape(int cases, std::uint64_t seed) {
  PropertyReport rep{"monotone escape", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed ^ 0x3ULL);
  std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.05, 3.0), time(0.1, 0.9);
  for (int i = 0; i < cases; ++i) {
    ++rep.cases;
    const DrivingTerm lambda = random_term(rng);
    const std::complex<double> z{re(rng), im(rng)};
    try {
      const InteriorTrajectory h = halfplane::evolve_interior(lambda, z, time(rng));
      bool ok = true;
      for (std::size_t k = 1; k < h.size(); ++k) {
        if (!(h.value[k].imag() < h.value[k - 1].imag())) {
          ok = false;
          rep.worst = std::max(rep.worst, h.value[k].imag() - h.value[k - 1].imag());
        }
      }
      if (!ok) note_failure(rep, "Im h not decreasing under " + lambda.describe());
    } catch (const Error& e) {
      note_failure(rep, e.what());
    }
  }
  return rep;
}

PropertyReport rotation_equivariance(int cases, std::uint64_t seed) {
  PropertyReport rep{"rotation equivariance", 0, 0, 0.0, {}};
  std::mt19937_64 rng(seed ^ 0x4ULL);
  std::uniform_real_distribution<double> radius(0.0, 0.9), angle(-std::numbers::pi, std::numbers::pi),
      time(0.05, 0.9);
  for (int i = 0; i < cases; ++i) {
    ++rep.cases;
    const DrivingTerm u = random_term(rng);
    const std::complex<double> z = std::polar(radius(rng), angle(rng));
    const double theta = angle(rng);
    const std::complex<double> rot = std::polar(1.0, theta);
    const double t = time(rng);
    const DrivingTerm shifted = u.with_offset(u.offset() + theta);
    try {
      const InteriorTrajectory a = disk::evolve_disk_interior(u, z, t);
      const InteriorTrajectory b = disk::evolve_disk_interior(shifted, z * rot, t);
      double defect = 0.0;
      if (a.terminal.completed() && b.terminal.completed()) {
        defect = std::abs(b.back() - rot * a.back());
      } else if (!a.terminal.completed() && !b.terminal.completed()) {
        defect = std::abs(*b.terminal.swallowed_at - *a.terminal.swallowed_at);
      } else {
        defect = INFINITY;
      }
      rep.worst = std::max(rep.worst, defect);
      if (!(defect <= 1e-8)) note_failure(rep, "defect " + num(defect) + " for " + u.describe());
    } catch (const Error& e) {
      note_failure(rep, e.what());
    }
  }
  return rep;
}

std::vector<int> all_criteria() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

std::vector<int> criteria_for_section(int section) {
  switch (section) {
    case 2:
      return {4, 6};
    case 3:
      return {1, 3, 5, 10};
    case 4:
      return {2, 7, 8, 9};
    default:
      throw ArgumentError("unknown section " + std::to_string(section) + " (expected 2, 3 or 4)");
  }
}

CriterionResult run_criterion(int id) {
  static const std::function<CriterionResult()> table[] = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  if (id < 1 || id > 10) throw ArgumentError("criterion id must be 1..10");
  const auto start = Clock::now();
  CriterionResult r;
  try {
    r = table[id - 1]();
  } catch (const std::exception& e) {
    r.id = id;
    r.title = "criterion " + std::to_string(id);
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.detail;
  return os.str();
}

}  // namespace loewner::repro
