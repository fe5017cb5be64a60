#include "loewner/tangent_slit.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "loewner/errors.hpp"

namespace loewner::tangent {

namespace {

using std::numbers::pi;
const double kSqrtPi = std::sqrt(pi);

// p(s) = 3 s^4 - 4 sqrt(pi) s^3 + 6 t; alpha = -s^2.
double poly(double s, double t) { return s * s * s * (3.0 * s - 4.0 * kSqrtPi) + 6.0 * t; }

std::complex<double> log1p_complex(std::complex<double> z) {
  // log(1 + z) = 2 atanh(z / (2 + z)), accurate for small |z|.
  return 2.0 * std::atanh(z / (2.0 + z));
}

}  // namespace

SlitParams solve_params(double t, double t_max) {
  if (!(t >= 0.0) || t > t_max) {
    std::ostringstream os;
    os << "tangent slit: time " << t << " outside [0, " << t_max << "]";
    throw DomainError(os.str());
  }
  SlitParams p;
  p.t = t;
  if (t == 0.0) return p;

  // The small root lies in (0, sqrt(pi)): p(0) = 6t > 0 and p(sqrt(pi)) = 6t - pi^2 < 0.
  // On that branch s = cbrt(6t / (4 sqrt(pi) - 3s)), a contraction with factor
  // s / (4 sqrt(pi) - 3s) < 1, which stays well conditioned for tiny t.
  if (!(poly(kSqrtPi, t) < 0.0)) throw RootError("tangent slit: no small-root branch at this time");
  double s = std::cbrt(3.0 * t / (2.0 * kSqrtPi));
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const double next = std::cbrt(6.0 * t / (4.0 * kSqrtPi - 3.0 * s));
    if (!(next > 0.0 && next < kSqrtPi)) break;
    const double step = std::abs(next - s);
    s = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * s) {
      converged = true;
      break;
    }
  }
  if (!converged) throw RootError("tangent slit: parameter iteration did not converge");
  p.alpha = -s * s;
  p.beta = p.alpha + 2.0 * kSqrtPi * s;
  p.gamma_prevertex = 2.0 * p.alpha + p.beta;
  return p;
}

ParamResiduals residuals(const SlitParams& p) {
  const double root = std::sqrt(-p.alpha * pi);
  ParamResiduals r;
  r.beta_relation = p.beta - p.alpha - 2.0 * root;
  r.time_relation = p.alpha * (3.0 * p.alpha + 4.0 * root) + 6.0 * p.t;
  r.height_relation = (p.alpha - p.beta) * (p.alpha - p.beta) + 4.0 * pi * p.alpha;
  return r;
}

std::complex<double> reciprocal_map(const SlitParams& p, std::complex<double> w) {
  if (p.t == 0.0) return 1.0 / w;
  if (w.imag() == 0.0) w = {w.real(), 0.0};  // +0: segment points are limits from above
  const double scale = std::max(1.0, std::abs(w));
  const double eps = 8.0 * std::numeric_limits<double>::epsilon() * scale;
  if (std::abs(w - p.alpha) <= eps || std::abs(w - p.beta) <= eps)
    throw PoleError("tangent slit map evaluated at a prevertex");

  const double a = p.alpha, b = p.beta, g = p.gamma_prevertex;
  const double log_coef = (b - g) / ((a - b) * (a - b));
  const double pole_coef = (a - g) / (a - b);
  // Branch vanishing at infinity with the cut on [alpha, beta].
  const std::complex<double> z = (b - a) / (w - b);
  std::complex<double> log_ratio;
  if (std::abs(z) < 0.5)
    log_ratio = log1p_complex(z);
  else
    log_ratio = std::log(w - a) - std::log(w - b);
  return log_coef * log_ratio + pole_coef / (w - a);
}

std::complex<double> evaluate_map(const SlitParams& p, std::complex<double> w) {
  const std::complex<double> zeta = reciprocal_map(p, w);
  if (zeta == std::complex<double>(0.0, 0.0)) throw PoleError("tangent slit map: 1/f vanished");
  return 1.0 / zeta;
}

std::complex<double> reciprocal_map_series(const SlitParams& p, std::complex<double> w, int terms) {
  const double a = p.alpha, b = p.beta;
  const std::complex<double> inv = 1.0 / w;
  // Logarithmic group: (1/(2 pi)) sum (beta^k - alpha^k) / (k w^k).
  std::complex<double> log_group = 0.0;
  std::complex<double> wk = inv;
  double ak = a, bk = b;
  for (int k = 1; k <= terms; ++k) {
    log_group += (bk - ak) / static_cast<double>(k) * wk;
    wk *= inv;
    ak *= a;
    bk *= b;
  }
  log_group /= 2.0 * pi;
  // Pole group: (1 + 2 sum (alpha/beta)^k) * (1/w + alpha/w^2 + ...).
  double prefactor = 1.0;
  if (b != 0.0) {
    const double r = a / b;
    double rk = r;
    for (int k = 1; k <= terms; ++k) {
      prefactor += 2.0 * rk;
      rk *= r;
    }
  }
  std::complex<double> geometric = 0.0;
  std::complex<double> term = inv;
  for (int k = 0; k < terms; ++k) {
    geometric += term;
    term *= a * inv;
  }
  return log_group + prefactor * geometric;
}

double driving_term(double t, double t_max) { return solve_params(t, t_max).gamma_prevertex; }

double scaled_driving_term(double r, double t, double t_max) {
  if (!(r > 0.0)) throw ArgumentError("scaled driving term: radius must be positive");
  double scaled = t / (r * r);
  // t = r^2 t_max may round just past the end of the domain.
  if (scaled > t_max && scaled <= t_max * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))
    scaled = t_max;
  return r * driving_term(scaled, t_max);
}

SeriesCoefficients series_coefficients() {
  SeriesCoefficients c;
  c.alpha_leading = -std::cbrt(9.0 / (4.0 * pi));
  c.beta_leading = std::cbrt(12.0 * pi);
  c.A2 = -3.0 / (4.0 * pi);
  c.h_t43_coeff = 1.5 * std::cbrt(12.0 * pi);
  return c;
}

}  // namespace loewner::tangent
