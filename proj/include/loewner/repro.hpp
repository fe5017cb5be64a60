#pragma once

#include <cstdint>
#include <string>
#include <vector>

// Preset experiments with fixed tolerances. The same checks back the
// acceptance binary and the `paper-repro` CLI subcommand.

namespace loewner::repro {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Seed shared by every randomized check.
inline constexpr std::uint64_t kSeed = 0x4c6f65776e6572ULL;

/// Number of random cases per property suite.
inline constexpr int kPropertyCases = 100;

/// Identifiers 1..10.
[[nodiscard]] std::vector<int> all_criteria();

/// Criteria grouped by topic: 2 (tangent slit), 3 (singular solutions and
/// properties), 4 (collision threshold and conversion). Throws ArgumentError
/// for other sections.
[[nodiscard]] std::vector<int> criteria_for_section(int section);

/// Runs one criterion; any exception becomes a failure with its message.
[[nodiscard]] CriterionResult run_criterion(int id);

/// "PASS [id] title: detail" or "FAIL [id] ...".
[[nodiscard]] std::string format_result(const CriterionResult& r);

/// Outcome of one randomized property suite.
struct PropertyReport {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  ///< largest observed defect (suite-specific measure)
  std::string first_failure;
  [[nodiscard]] bool passed() const { return cases > 0 && failures == 0; }
};

/// r h(z0, t) against h(r z0, r^2 t) under r lambda(s / r^2); relative 1e-8.
[[nodiscard]] PropertyReport scaling_covariance(int cases = kPropertyCases, std::uint64_t seed = kSeed);
/// x0 < y0 on one side of lambda(0) stay ordered on a shared grid.
[[nodiscard]] PropertyReport ordering_preservation(int cases = kPropertyCases, std::uint64_t seed = kSeed);
/// Im h strictly decreasing along interior trajectories.
[[nodiscard]] PropertyReport monotone_escape(int cases = kPropertyCases, std::uint64_t seed = kSeed);
/// Disk flow: w(z0 e^{i theta}; u + theta) = e^{i theta} w(z0; u); absolute 1e-8.
[[nodiscard]] PropertyReport rotation_equivariance(int cases = kPropertyCases, std::uint64_t seed = kSeed);

}  // namespace loewner::repro
