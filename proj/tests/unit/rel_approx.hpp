#pragma once

#include <doctest.h>

namespace loewner::testing {

/// doctest::Approx with a purely relative tolerance (no unit scale floor).
inline doctest::Approx rel(double value) { return doctest::Approx(value).scale(0.0); }

}  // namespace loewner::testing
