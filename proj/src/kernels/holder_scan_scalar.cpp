#include <algorithm>
#include <cmath>

#include "loewner/kernels/holder_scan.hpp"

namespace loewner::kernels::scalar {

// Reference definition: one std::pow per pair.
double offset_max(const double* t, const double* f, std::size_t n, std::size_t d, double exponent) {
  double best = 0.0;
  if (d == 0 || d >= n) return best;
  for (std::size_t i = 0; i + d < n; ++i) {
    const double q = std::abs(f[i + d] - f[i]) / std::pow(t[i + d] - t[i], exponent);
    best = std::max(best, q);
  }
  return best;
}

}  // namespace loewner::kernels::scalar
