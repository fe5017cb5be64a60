#pragma once

#include <complex>

// Exact map for the upper half-plane slit along the circle of radius 1
// centred at i, growing from the origin tangentially to the real axis.
//
// With s > 0 the smaller positive root of 3 s^4 - 4 sqrt(pi) s^3 + 6 t = 0,
//   alpha = -s^2,  beta = alpha + 2 sqrt(-pi alpha),  gamma = 2 alpha + beta,
// and the inverse map f(., t): H -> H \ arc is given by
//   1/f(w) = (beta - gamma)/(alpha - beta)^2 * log((w - alpha)/(w - beta))
//          + (alpha - gamma)/(alpha - beta) / (w - alpha),
// normalised as f(w) = w - 2t/w + ... at infinity. [alpha, beta] is the image
// of the two sides of the arc and gamma the image of its tip, so the driving
// term of the slit is lambda(t) = gamma(t).

namespace loewner::tangent {

/// Largest time accepted by default; the construction is tracked on the small-root branch.
inline constexpr double kDefaultTMax = 0.05;

struct SlitParams {
  double t = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma_prevertex = 0.0;
};

/// Residuals of the three relations tying (alpha, beta, t) together.
struct ParamResiduals {
  double beta_relation = 0.0;      ///< beta - alpha - 2 sqrt(-alpha pi)
  double time_relation = 0.0;      ///< alpha (3 alpha + 4 sqrt(-alpha pi)) + 6 t
  double height_relation = 0.0;    ///< (alpha - beta)^2 + 4 pi alpha
};

struct SeriesCoefficients {
  double alpha_leading = 0.0;  ///< -(9/(4 pi))^{1/3}, alpha ~ alpha_leading t^{2/3}
  double beta_leading = 0.0;   ///< (12 pi)^{1/3}, beta ~ beta_leading t^{1/3}
  double A2 = 0.0;             ///< -3/(4 pi), coefficient of t in alpha(t)
  double h_t43_coeff = 0.0;    ///< (3/2)(12 pi)^{1/3}
};

/// Small-root parameters at time t by fixed-point iteration on the small-root
/// branch. Throws DomainError for t outside [0, t_max] and RootError when the
/// iteration does not settle.
[[nodiscard]] SlitParams solve_params(double t, double t_max = kDefaultTMax);

[[nodiscard]] ParamResiduals residuals(const SlitParams& p);

/// f(w, t) in the closed upper half-plane. Points on the real segment (alpha, beta)
/// are taken as limits from above. Throws PoleError at w = alpha or w = beta.
[[nodiscard]] std::complex<double> evaluate_map(const SlitParams& p, std::complex<double> w);

/// 1/f(w, t) in closed form (the quantity zeta of the construction).
[[nodiscard]] std::complex<double> reciprocal_map(const SlitParams& p, std::complex<double> w);

/// 1/f(w, t) from its expansion in powers of 1/w, grouped as
///   (1/(2 pi)) sum_k (beta^k - alpha^k)/(k w^k)
///   + (1 + 2 sum_k (alpha/beta)^k) * sum_k alpha^k / w^{k+1}
/// truncated after `terms` powers. Valid for |w| > max(|alpha|, |beta|).
[[nodiscard]] std::complex<double> reciprocal_map_series(const SlitParams& p,
                                                         std::complex<double> w, int terms = 40);

/// lambda_1(t) = gamma_prevertex(t); lambda_1(0) = 0.
[[nodiscard]] double driving_term(double t, double t_max = kDefaultTMax);

/// lambda_r(t) = r lambda_1(t / r^2), the radius-r circle under Löwner scaling.
[[nodiscard]] double scaled_driving_term(double r, double t, double t_max = kDefaultTMax);

[[nodiscard]] SeriesCoefficients series_coefficients();

}  // namespace loewner::tangent
