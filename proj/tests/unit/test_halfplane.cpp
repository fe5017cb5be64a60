#include <doctest.h>

#include "rel_approx.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "loewner/errors.hpp"
#include "loewner/halfplane.hpp"
#include "loewner/tangent_slit.hpp"

using loewner::testing::rel;
using namespace loewner;
using namespace loewner::halfplane;
using C = std::complex<double>;

namespace {

/// Closed-form flow for lambda = 0 on the branch with Im >= 0.
C flat(C z, double t) {
  C w = std::sqrt(z * z + 4.0 * t);
  if (w.imag() < 0.0) w = -w;
  return w;
}

double value_at(const BoundaryTrajectory& tr, double t) {
  for (std::size_t i = 0; i < tr.size(); ++i)
    if (tr.t[i] == t) return tr.value[i];
  FAIL("no sample at t=" << t);
  return NAN;
}

}  // namespace

TEST_CASE("interior flow under lambda = 0 follows sqrt(z^2 + 4t)") {
  const InteriorTrajectory tr = evolve_interior(DrivingTerm::constant(0.0), C(1.0, 1.0), 0.5);
  CHECK(tr.terminal.completed());
  CHECK(tr.back_time() == 0.5);
  CHECK(std::abs(tr.back() - flat(C(1.0, 1.0), 0.5)) <= 1e-8);
  CHECK(tr.back().real() == rel(1.5538).epsilon(1e-4));
  CHECK(tr.back().imag() == rel(0.6436).epsilon(1e-4));
  check_trajectory(tr);
}

TEST_CASE("zero-length evolution returns the start point") {
  const InteriorTrajectory a = evolve_interior(DrivingTerm::lind(3.0), C(0.3, 0.2), 0.0);
  CHECK(a.size() == 1);
  CHECK(a.back() == C(0.3, 0.2));
  const BoundaryTrajectory b = evolve_boundary(DrivingTerm::sqrt_forward(2.0), 1.5, 0.0);
  CHECK(b.size() == 1);
  CHECK(b.back() == 1.5);
}

TEST_CASE("the point i is swallowed at t = 1/4 under lambda = 0") {
  const InteriorTrajectory tr = evolve_interior(DrivingTerm::constant(0.0), C(0.0, 1.0), 1.0);
  REQUIRE(tr.terminal.swallowed_at.has_value());
  CHECK(std::abs(*tr.terminal.swallowed_at - 0.25) <= 1e-6);
}

TEST_CASE("boundary flow under lambda = 0") {
  const BoundaryTrajectory tr = evolve_boundary(DrivingTerm::constant(0.0), 1.0, 2.0);
  CHECK(std::abs(tr.back() - 3.0) <= 1e-8);
  const BoundaryTrajectory left = evolve_boundary(DrivingTerm::constant(0.0), -1.0, 2.0);
  CHECK(std::abs(left.back() + 3.0) <= 1e-8);
}

TEST_CASE("Lind trajectory x(t, 2) and its swallowing at t = 1") {
  const DrivingTerm lambda = DrivingTerm::lind(4.0);
  std::vector<double> grid;
  for (int i = 0; i <= 9999; ++i) grid.push_back(i * 1e-4);
  const BoundaryTrajectory x = evolve_boundary(lambda, 2.0, 1.0, {}, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x.t[i] <= 1.0 - 1e-4) worst = std::max(worst, std::abs(x.value[i] - (4.0 - 2.0 * std::sqrt(1.0 - x.t[i]))));
  CHECK(worst <= 1e-6);
  REQUIRE(x.terminal.swallowed_at.has_value());
  CHECK(std::abs(*x.terminal.swallowed_at - 1.0) <= 1e-3);
  CHECK(std::abs(x.back_time() - *x.terminal.swallowed_at) <= 1e-3);
}

TEST_CASE("boundary start at the driving point is rejected") {
  CHECK_THROWS_AS((void)evolve_boundary(DrivingTerm::constant(0.5), 0.5, 1.0), ArgumentError);
  CHECK_THROWS_AS((void)evolve_interior(DrivingTerm::constant(0.0), C(1.0, 0.0), 1.0), ArgumentError);
  CHECK_THROWS_AS((void)evolve_interior(DrivingTerm::constant(0.0), C(1.0, -1.0), 1.0), ArgumentError);
  CHECK_THROWS_AS((void)evolve_interior(DrivingTerm::constant(0.0), C(1.0, 1.0), -1.0), ArgumentError);
}

TEST_CASE("output grids are honoured exactly") {
  const std::vector<double> grid{0.1, 0.2, 0.35, 0.5};
  const InteriorTrajectory tr = evolve_interior(DrivingTerm::constant(0.0), C(0.5, 2.0), 0.5, {}, grid);
  REQUIRE(tr.size() == 5);
  CHECK(tr.t[0] == 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(tr.t[k + 1] == grid[k]);
    CHECK(std::abs(tr.value[k + 1] - flat(C(0.5, 2.0), grid[k])) <= 1e-9);
  }
  const std::vector<double> bad{0.3, 0.2};
  CHECK_THROWS_AS((void)evolve_interior(DrivingTerm::constant(0.0), C(0.5, 2.0), 0.5, {}, bad), ArgumentError);
}

TEST_CASE("unresolvable contact raises an integration error with the last state") {
  SolverOptions opt;
  opt.contact_horizon = 0.0;
  opt.collision_threshold = 1e-300;
  try {
    (void)evolve_boundary(DrivingTerm::lind(4.0), 2.0, 1.0, opt);
    FAIL("expected an integration error");
  } catch (const IntegrationError& e) {
    CHECK(e.last_time() > 0.99);
    CHECK(e.last_time() <= 1.0);
    CHECK(std::isfinite(e.last_state().real()));
  }
}

TEST_CASE("hydrodynamic normalisation at large |z|") {
  for (const DrivingTerm& lambda : {DrivingTerm::lind(2.0), DrivingTerm::sqrt_forward(-3.0)}) {
    const double t = 0.5;
    double prev = 0.0;
    for (double r : {100.0, 200.0, 400.0}) {
      const C z = std::polar(r, 1.1);
      SolverOptions opt;
      opt.tol = 1e-13;
      const C h = evolve_interior(lambda, z, t, opt).back();
      const double rem = std::abs(h - z - 2.0 * t / z);
      if (prev > 0.0) CHECK(rem / prev == rel(0.25).epsilon(0.2));
      CHECK(rem * r * r < 10.0);
      prev = rem;
    }
  }
}

TEST_CASE("singular solutions for lambda = 0 are +-2 sqrt(t)") {
  const DrivingTerm zero = DrivingTerm::constant(0.0);
  const std::vector<double> grid{0.0, 1e-10, 1e-6, 0.01, 0.25, 1.0};
  const BoundaryTrajectory hp = singular_plus(zero, 1.0, {}, grid);
  const BoundaryTrajectory hm = singular_minus(zero, 1.0, {}, grid);
  for (double t : grid) {
    CHECK(std::abs(value_at(hp, t) - 2.0 * std::sqrt(t)) <= 1e-6);
    CHECK(std::abs(value_at(hm, t) + 2.0 * std::sqrt(t)) <= 1e-6);
  }
  CHECK(value_at(hp, 0.0) == 0.0);
}

TEST_CASE("singular solution in dense mode") {
  const BoundaryTrajectory hp = singular_plus(DrivingTerm::sqrt_forward(1.0), 0.5);
  check_trajectory(hp);
  CHECK(hp.t.front() == 0.0);
  CHECK(hp.back_time() == 0.5);
  const double a = sharp_ratio_bound(1.0);
  for (std::size_t i = 1; i < hp.size(); ++i) CHECK(hp.value[i] / std::sqrt(hp.t[i]) == rel(a).epsilon(1e-6));
}

TEST_CASE("ratio bound and sqrt-driven singular solutions") {
  CHECK(sharp_ratio_bound(0.0) == 2.0);
  CHECK(sharp_ratio_bound(1.0) == rel((1.0 + std::sqrt(17.0)) / 2.0));
  CHECK(sharp_ratio_bound(4.0) == rel(2.0 + 2.0 * std::sqrt(2.0)));
  for (double c : {0.0, 0.3, 1.0, 2.5, 4.0, 7.0}) CHECK(sharp_ratio_bound(c) >= 2.0);

  std::vector<double> grid;
  for (int k = 0; k <= 24; ++k) grid.push_back(std::pow(10.0, -6.0 + 0.25 * k));
  for (double c : {0.0, 1.0, 4.0}) {
    const RatioDiagnostic d = ratio_limsup_check(DrivingTerm::sqrt_forward(c), c, grid);
    for (double phi : d.ratio) CHECK(phi == rel(d.bound).epsilon(1e-4));
  }
}

TEST_CASE("the minus side for lambda = c sqrt(t)") {
  for (double c : {1.0, 4.0, -2.0}) {
    const double b = (std::sqrt(c * c + 16.0) - c) / 2.0;
    const std::vector<double> grid{1e-4, 0.1, 1.0};
    const BoundaryTrajectory hm = singular_minus(DrivingTerm::sqrt_forward(c), 1.0, {}, grid);
    for (double t : grid) CHECK(value_at(hm, t) == rel(-b * std::sqrt(t)).epsilon(1e-6));
  }
}

TEST_CASE("ratio under the Lind term stays below the norm-4 bound") {
  std::vector<double> grid;
  for (int k = 1; k <= 90; ++k) grid.push_back(0.01 * k);
  const RatioDiagnostic d = ratio_limsup_check(DrivingTerm::lind(4.0), 4.0, grid);
  CHECK(d.max_ratio <= sharp_ratio_bound(4.0) + 1e-3);
}

TEST_CASE("swallowed interval examples") {
  const std::vector<double> grid{0.0, 0.25, 1.0};
  const auto iv = swallowed_interval(DrivingTerm::constant(0.0), grid);
  REQUIRE(iv.size() == 3);
  CHECK(iv[0].lower == 0.0);
  CHECK(iv[0].upper == 0.0);
  CHECK(std::abs(iv[2].lower + 2.0) <= 1e-6);
  CHECK(std::abs(iv[2].upper - 2.0) <= 1e-6);
}

TEST_CASE("swallowed interval reproduces the tangent-slit prevertices") {
  std::vector<double> grid;
  for (int k = 0; k <= 12; ++k) grid.push_back(std::pow(10.0, -6.0 + 0.25 * k));
  const auto iv = swallowed_interval(DrivingTerm::tangent_circular(1.0), grid);
  for (const auto& v : iv) {
    const tangent::SlitParams p = tangent::solve_params(v.t);
    CHECK(v.lower == rel(p.alpha).epsilon(0.01));
    CHECK(v.upper == rel(p.beta).epsilon(0.01));
  }
}

TEST_CASE("singular family restarts and nests") {
  const DrivingTerm zero = DrivingTerm::constant(0.0);
  const std::vector<double> taus{0.0, 0.5};
  const std::vector<double> samples{0.0, 0.25, 0.5, 0.75, 1.0};
  const auto fam = singular_family(zero, taus, 1.0, samples);
  REQUIRE(fam.size() == 2);
  CHECK(std::abs(value_at(fam[1].upper, 1.0) - std::sqrt(2.0)) <= 1e-6);
  CHECK(std::abs(value_at(fam[1].lower, 1.0) + std::sqrt(2.0)) <= 1e-6);
  CHECK(value_at(fam[1].upper, 0.5) == 0.0);

  const BoundaryTrajectory hp = singular_plus(zero, 1.0, {}, samples);
  for (double t : samples) CHECK(std::abs(value_at(fam[0].upper, t) - value_at(hp, t)) <= 1e-12 * std::max(1.0, std::abs(value_at(hp, t))));

  std::vector<double> many;
  for (int k = 0; k < 8; ++k) many.push_back(0.1 * k);
  CHECK_NOTHROW((void)singular_family(DrivingTerm::lind(3.0), many, 0.9));
  CHECK_THROWS_AS((void)singular_family(zero, std::vector<double>{1.0}, 1.0), ArgumentError);
}

TEST_CASE("bootstrap failure is reported") {
  SingularOptions sopt;
  sopt.max_depth_decades = 1;
  CHECK_THROWS_AS((void)singular_plus(DrivingTerm::lind(1.0), 0.5, {}, {}, sopt), ArgumentError);
  // A single start depth leaves nothing to compare against.
  sopt.max_depth_decades = 3;
  CHECK_THROWS_AS((void)singular_plus(DrivingTerm::lind(1.0), 0.5, {}, {}, sopt), BootstrapError);
}

TEST_CASE("the h-expansion remainder grows like t^(4/3) under the tangent term") {
  const DrivingTerm term = DrivingTerm::tangent_circular(1.0);
  const C z(1.2, 2.0);
  const C zeta = 1.0 / z;
  SolverOptions opt;
  opt.tol = 1e-13;
  std::vector<double> lt, lr;
  for (int k = 0; k <= 12; ++k) {
    const double t = std::pow(10.0, -6.0 + 0.25 * k);
    const C h = evolve_interior(term, z, t, opt).back();
    const double rem = std::abs(h - z - 2.0 * zeta * t);
    lt.push_back(std::log(t));
    lr.push_back(std::log(rem));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    mx += lt[i];
    my += lr[i];
  }
  mx /= lt.size();
  my /= lt.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    sxy += (lt[i] - mx) * (lr[i] - my);
    sxx += (lt[i] - mx) * (lt[i] - mx);
  }
  CHECK(sxy / sxx == rel(4.0 / 3.0).epsilon(0.02 * 3.0 / 4.0));
  // Leading coefficient, with the zeta^2 factor.
  const double t = 1e-6;
  const C h = evolve_interior(term, z, t, opt).back();
  const C lead = tangent::series_coefficients().h_t43_coeff * zeta * zeta * std::pow(t, 4.0 / 3.0);
  CHECK(std::abs(h - z - 2.0 * zeta * t - lead) <= 0.05 * std::abs(lead));
}
