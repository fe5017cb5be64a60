#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "loewner/kernels/holder_scan.hpp"

namespace loewner::kernels::avx2 {

namespace {

inline __m256d ipow(__m256d x, int k) {
  __m256d r = _mm256_set1_pd(1.0);
  for (int i = 0; i < k; ++i) r = _mm256_mul_pd(r, x);
  return r;
}

inline double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

// |df|/dt^(p/q) is maximised through the monotone surrogate |df|^q / dt^p,
// which needs only multiplies and one divide per pair.
double offset_max_powered(const double* t, const double* f, std::size_t n, std::size_t d, int p,
                          int q) {
  if (d == 0 || d >= n) return 0.0;
  const std::size_t m = n - d;
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d f0 = _mm256_loadu_pd(f + i);
    const __m256d f1 = _mm256_loadu_pd(f + i + d);
    const __m256d t0 = _mm256_loadu_pd(t + i);
    const __m256d t1 = _mm256_loadu_pd(t + i + d);
    const __m256d df = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(f1, f0));
    const __m256d dt = _mm256_sub_pd(t1, t0);
    const __m256d ratio = _mm256_div_pd(ipow(df, q), ipow(dt, p));
    best = _mm256_max_pd(best, ratio);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double result = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < m; ++i) {
    const double df = std::abs(f[i + d] - f[i]);
    const double dt = t[i + d] - t[i];
    result = std::max(result, ipow(df, q) / ipow(dt, p));
  }
  return result;
}

}  // namespace loewner::kernels::avx2
