#include <doctest.h>

#include "rel_approx.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "loewner/bridge.hpp"
#include "loewner/csv.hpp"
#include "loewner/driving_term.hpp"
#include "loewner/errors.hpp"
#include "loewner/holder.hpp"
#include "loewner/trajectory.hpp"

using loewner::testing::rel;
using namespace loewner;

namespace {

/// Independent O(n^2) oracle for the sup-quotient.
double brute_sup(const std::vector<double>& t, const std::vector<double>& f, double a) {
  double best = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      best = std::max(best, std::abs(f[j] - f[i]) / std::pow(t[j] - t[i], a));
  return best;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  v.back() = b;
  return v;
}

}  // namespace

TEST_CASE("driving terms evaluate their closed forms") {
  CHECK(eval_driving(DrivingTerm::constant(0.0), 0.7) == 0.0);
  CHECK(eval_driving(DrivingTerm::sqrt_forward(4.0), 0.25) == rel(2.0));
  CHECK(eval_driving(DrivingTerm::lind(4.0), 0.75) == rel(2.0));
  CHECK(DrivingTerm::lind(4.0)(1.0) == rel(4.0));
  CHECK(DrivingTerm::constant(1.0).with_offset(0.5)(3.0) == rel(1.5));
}

TEST_CASE("driving terms reject times outside their domain") {
  CHECK_THROWS_AS((void)DrivingTerm::lind(4.0)(1.0 + 1e-12), DomainError);
  CHECK_THROWS_AS((void)DrivingTerm::constant(0.0)(-1e-300), DomainError);
  CHECK_THROWS_AS((void)DrivingTerm::tangent_circular(1.0)(0.06), DomainError);
  CHECK_NOTHROW((void)DrivingTerm::tangent_circular(2.0)(0.2));
}

TEST_CASE("sampled terms interpolate linearly") {
  SampledTable tab{{0.0, 1.0, 3.0}, {0.0, 2.0, -2.0}};
  const DrivingTerm d = DrivingTerm::sampled(tab);
  CHECK(d(0.0) == 0.0);
  CHECK(d(0.5) == rel(1.0));
  CHECK(d(1.0) == rel(2.0));
  CHECK(d(2.0) == doctest::Approx(0.0));
  CHECK(d(3.0) == rel(-2.0));
  CHECK(d.t_max() == 3.0);
  CHECK_THROWS_AS((void)d(3.5), DomainError);
}

TEST_CASE("sampled tables must start at zero and increase") {
  CHECK_THROWS_AS((void)DrivingTerm::sampled({{0.1, 1.0}, {0.0, 0.0}}), ArgumentError);
  CHECK_THROWS_AS((void)DrivingTerm::sampled({{0.0, 0.0}, {0.0, 0.0}}), ArgumentError);
  CHECK_THROWS_AS((void)DrivingTerm::sampled({{0.0, 1.0}, {0.0}}), ArgumentError);
  CHECK_THROWS_AS((void)DrivingTerm::sampled({{}, {}}), ArgumentError);
}

TEST_CASE("term specs parse and print back") {
  for (const char* spec : {"constant:0", "sqrt:4", "lind:4", "tangent:1", "lind:3.5@+0.25", "sqrt:-1@-2"}) {
    const DrivingTerm d = DrivingTerm::parse(spec);
    const DrivingTerm again = DrivingTerm::parse(d.describe());
    CHECK(again.describe() == d.describe());
    CHECK(again(0.01) == d(0.01));
  }
  CHECK(DrivingTerm::parse("lind:4").kind() == DrivingTerm::Kind::lind);
  CHECK(DrivingTerm::parse("constant:1@+0.5")(0.0) == rel(1.5));
  CHECK_THROWS_AS((void)DrivingTerm::parse("lind"), ArgumentError);
  CHECK_THROWS_AS((void)DrivingTerm::parse("wave:1"), ArgumentError);
  CHECK_THROWS_AS((void)DrivingTerm::parse("sqrt:abc"), ArgumentError);
  CHECK_THROWS_AS((void)DrivingTerm::parse("file:/nonexistent/table.csv"), Error);
}

TEST_CASE("csv tables round-trip losslessly") {
  SampledTable tab{{0.0, 0.1, 1.0 / 3.0}, {std::sqrt(2.0), -1e-300, 12345.678901234567}};
  std::stringstream ss;
  csv::write_table(ss, tab);
  const SampledTable back = csv::read_table(ss);
  CHECK(back.t == tab.t);
  CHECK(back.value == tab.value);
}

TEST_CASE("csv reader checks the header and skips comments") {
  std::stringstream good("t,value\n# note\n0,1\n\n0.5,2\n");
  const SampledTable tab = csv::read_table(good);
  CHECK(tab.t.size() == 2);
  std::stringstream bad("time,v\n0,1\n");
  CHECK_THROWS_AS((void)csv::read_table(bad), ArgumentError);
  std::stringstream junk("t,value\n0,x\n");
  CHECK_THROWS_AS((void)csv::read_table(junk), ArgumentError);
}

TEST_CASE("trajectory csv carries the terminal line") {
  BoundaryTrajectory tr;
  tr.push(0.0, 1.0);
  tr.push(0.5, 2.0);
  tr.terminal.swallowed_at = 0.5;
  std::stringstream ss;
  csv::write_trajectory(ss, tr);
  CHECK(ss.str() == "t,value\n0,1\n0.5,2\n# terminal=swallowed t=0.5\n");
  InteriorTrajectory it;
  it.push(0.0, {1.0, 2.0});
  std::stringstream s2;
  csv::write_trajectory(s2, it);
  CHECK(s2.str() == "t,re,im\n0,1,2\n");
}

TEST_CASE("check_trajectory rejects disorder and non-finite values") {
  BoundaryTrajectory tr;
  tr.push(0.0, 1.0);
  tr.push(0.0, 1.0);
  CHECK_THROWS_AS(check_trajectory(tr), InvariantViolation);
  InteriorTrajectory it;
  it.push(0.0, {NAN, 0.0});
  CHECK_THROWS_AS(check_trajectory(it), InvariantViolation);
}

TEST_CASE("sup-norm examples") {
  const std::vector<double> t = linspace(0.0, 1.0, 2001);
  std::vector<double> f5(t.size(), 5.0);
  CHECK(holder_sup_norm(t, f5, 0.5) == 0.0);
  std::vector<double> f3;
  for (double s : t) f3.push_back(3.0 * std::sqrt(s));
  CHECK(holder_sup_norm(t, f3, 0.5) == rel(3.0).epsilon(0.01 / 3.0));
  CHECK_THROWS_AS((void)holder_sup_norm(std::vector<double>{0.0}, std::vector<double>{1.0}, 0.5), ArgumentError);
  CHECK_THROWS_AS((void)holder_sup_norm(t, f3, 0.0), ArgumentError);
  CHECK_THROWS_AS((void)holder_sup_norm(t, f3, 1.5), ArgumentError);
}

TEST_CASE("sup-norm of the converted Lind term on [0, 1) is 4") {
  const DrivingTerm u = bridge::converted_lind_term();
  std::vector<double> t = linspace(0.0, 1.0, 2001);
  t.pop_back();
  for (int k = 16; k <= 60; ++k) t.push_back(1.0 - std::pow(10.0, -k * 0.25));
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  std::vector<double> f;
  for (double s : t) f.push_back(u(s));
  CHECK(std::abs(holder_sup_norm(t, f, 0.5) - 4.0) <= 0.01);
}

TEST_CASE("sup-norm matches the brute-force oracle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> step(1e-4, 1e-2), val(-1.0, 1.0);
  for (double a : {0.5, 1.0 / 3.0, 2.0 / 3.0, 0.25, 1.0, 0.7071}) {
    std::vector<double> t{0.0}, f{val(rng)};
    for (int i = 1; i < 400; ++i) {
      t.push_back(t.back() + step(rng));
      f.push_back(val(rng));
    }
    CHECK(holder_sup_norm(t, f, a) == rel(brute_sup(t, f, a)).epsilon(1e-12));
  }
}

TEST_CASE("sup-norm above the all-pairs limit captures anchored sups") {
  const int n = static_cast<int>(kAllPairsLimit) + 1000;
  const std::vector<double> t = linspace(0.0, 1.0, n);
  std::vector<double> f;
  for (double s : t) f.push_back(2.5 * std::sqrt(s));
  const double dyadic = holder_sup_norm(t, f, 0.5);
  CHECK(dyadic <= brute_sup(t, f, 0.5) * (1.0 + 1e-14));
  CHECK(dyadic == rel(2.5).epsilon(1e-12));
}

TEST_CASE("sup-norm scales with the values") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const std::vector<double> t = linspace(0.0, 2.0, 300);
  std::vector<double> f;
  for (std::size_t i = 0; i < t.size(); ++i) f.push_back(val(rng));
  const double base = holder_sup_norm(t, f, 0.5);
  for (double k : {2.0, 0.25, 3.0, 7.5}) {
    std::vector<double> g;
    for (double v : f) g.push_back(k * v);
    CHECK(holder_sup_norm(t, g, 0.5) == rel(k * base).epsilon(1e-14));
  }
}

TEST_CASE("sup-norm never decreases under refinement") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto f = [](double s) { return std::sqrt(s) * std::sin(9.0 * s) + std::cbrt(std::abs(s - 0.4)); };
  std::vector<double> t{0.0, 1.0};
  double prev = 0.0;
  for (int round = 0; round < 12; ++round) {
    for (int k = 0; k < 40; ++k) t.push_back(u01(rng));
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    std::vector<double> v;
    for (double s : t) v.push_back(f(s));
    const double now = holder_sup_norm(t, v, 0.5);
    CHECK(now >= prev);
    prev = now;
  }
}

TEST_CASE("power-law fits recover exponent and coefficient") {
  std::vector<double> t{0.0};
  for (int k = 0; k <= 120; ++k) t.push_back(std::pow(10.0, -7.0 + 0.05 * k));
  for (double a : {1.0 / 3.0, 0.5, 2.0 / 3.0}) {
    for (double c : {0.5, 1.0, 5.0}) {
      std::vector<double> f;
      for (double s : t) f.push_back(c * std::pow(s, a));
      const HolderFit fit = holder_exponent_fit(t, f, {1e-6, 1e-2});
      CHECK(fit.exponent == rel(a).epsilon(1e-3));
      CHECK(fit.coefficient == rel(c).epsilon(1e-3));
      CHECK(fit.sup_norm >= 0.0);
    }
  }
  std::vector<double> f;
  for (double s : t) f.push_back(2.0 * std::sqrt(s) + 7.0);
  const HolderFit fit = holder_exponent_fit(t, f, {1e-6, 1e-2}, 0.5);
  CHECK(fit.exponent == rel(0.5).epsilon(1e-3));
  CHECK(fit.coefficient == rel(2.0).epsilon(5e-3));
  CHECK(fit.norm_exponent == 0.5);
  CHECK_FALSE(fit.grid.empty());
}

TEST_CASE("power-law fit errors") {
  std::vector<double> t{0.0};
  for (int k = 0; k <= 40; ++k) t.push_back(std::pow(10.0, -6.0 + 0.1 * k));
  std::vector<double> flat(t.size(), 1.0);
  CHECK_THROWS_AS((void)holder_exponent_fit(t, flat, {1e-6, 1e-2}), FitError);
  std::vector<double> f;
  for (double s : t) f.push_back(std::sqrt(s));
  CHECK_THROWS_AS((void)holder_exponent_fit(t, f, {1e-6, 2e-6}), FitError);
  CHECK_THROWS_AS((void)holder_exponent_fit(t, f, {-1.0, 1e-3}), FitError);
  std::vector<double> tt(t.begin() + 1, t.end()), ff(f.begin() + 1, f.end());
  CHECK_THROWS_AS((void)holder_exponent_fit(tt, ff, {1e-6, 1e-2}), Error);
  std::vector<double> steep;
  for (double s : t) steep.push_back(s * s);
  CHECK_THROWS_AS((void)holder_exponent_fit(t, steep, {1e-6, 1e-2}), FitError);
}
