#include <algorithm>
#include <cmath>

#include "loewner/errors.hpp"
#include "loewner/kernels/holder_scan.hpp"

namespace loewner::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(LOEWNER_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

void check_inputs(std::span<const double> t, std::span<const double> f, double exponent) {
  if (t.size() != f.size()) throw ArgumentError("holder scan: time and value spans differ in length");
  if (!(exponent > 0.0 && exponent <= 1.0)) throw ArgumentError("holder scan: exponent must lie in (0, 1]");
}

double offset_max_unchecked(std::span<const double> t, std::span<const double> f, std::size_t d,
                            double exponent, Backend backend, RationalExponent r) {
#if defined(LOEWNER_HAVE_AVX2)
  if (backend == Backend::avx2 && r.valid()) {
    const double powered = avx2::offset_max_powered(t.data(), f.data(), t.size(), d, r.p, r.q);
    return r.q == 1 ? powered : std::pow(powered, 1.0 / r.q);
  }
#else
  (void)r;
  (void)backend;
#endif
  return scalar::offset_max(t.data(), f.data(), t.size(), d, exponent);
}

}  // namespace

bool avx2_available() noexcept {
  static const bool available = cpu_has_avx2();
  return available;
}

Backend resolve(Backend requested) noexcept {
  if (requested == Backend::scalar) return Backend::scalar;
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

const char* backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::automatic:
      return "automatic";
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

RationalExponent as_rational(double exponent) noexcept {
  for (int q = 1; q <= 4; ++q) {
    const double pq = exponent * q;
    const int p = static_cast<int>(std::lround(pq));
    if (p >= 1 && p <= q && std::abs(pq - p) <= 1e-15 * q) return {p, q};
  }
  return {};
}

double offset_max(std::span<const double> t, std::span<const double> f, std::size_t d,
                  double exponent, Backend backend) {
  check_inputs(t, f, exponent);
  return offset_max_unchecked(t, f, d, exponent, resolve(backend), as_rational(exponent));
}

double all_pairs_max(std::span<const double> t, std::span<const double> f, double exponent,
                     Backend backend) {
  check_inputs(t, f, exponent);
  const Backend b = resolve(backend);
  const RationalExponent r = as_rational(exponent);
  double best = 0.0;
  for (std::size_t d = 1; d < t.size(); ++d)
    best = std::max(best, offset_max_unchecked(t, f, d, exponent, b, r));
  return best;
}

}  // namespace loewner::kernels
