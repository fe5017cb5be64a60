#pragma once

#include <cstddef>
#include <span>

// Pair-quotient scans behind holder_sup_norm. A scalar reference and, on
// x86-64, an AVX2 variant; dispatch picks one at runtime.

namespace loewner::kernels {

enum class Backend { automatic, scalar, avx2 };

/// True when the AVX2 variant was compiled in and the CPU supports AVX2+FMA.
[[nodiscard]] bool avx2_available() noexcept;

/// The backend `automatic` resolves to on this machine.
[[nodiscard]] Backend resolve(Backend requested) noexcept;

[[nodiscard]] const char* backend_name(Backend b) noexcept;

/// Exponent written as p/q with small integers, when one exists.
struct RationalExponent {
  int p = 0;
  int q = 0;
  [[nodiscard]] bool valid() const noexcept { return q > 0; }
};

/// Recognises exponents p/q with 1 <= q <= 4 to within 1e-15.
[[nodiscard]] RationalExponent as_rational(double exponent) noexcept;

/// max over i of |f[i+d] - f[i]| / (t[i+d] - t[i])^exponent for one index gap d.
/// Returns 0 when d >= n.
[[nodiscard]] double offset_max(std::span<const double> t, std::span<const double> f,
                                std::size_t d, double exponent,
                                Backend backend = Backend::automatic);

/// Same quantity over every gap d = 1 .. n-1 (all pairs).
[[nodiscard]] double all_pairs_max(std::span<const double> t, std::span<const double> f,
                                   double exponent, Backend backend = Backend::automatic);

namespace scalar {
double offset_max(const double* t, const double* f, std::size_t n, std::size_t d, double exponent);
}

#if defined(LOEWNER_HAVE_AVX2)
namespace avx2 {
/// Requires a valid rational exponent; returns the maximum of
/// |df|^q / dt^p (not yet raised to 1/q).
double offset_max_powered(const double* t, const double* f, std::size_t n, std::size_t d, int p,
                          int q);
}
#endif

}  // namespace loewner::kernels
