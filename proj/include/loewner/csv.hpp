#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "loewner/driving_term.hpp"
#include "loewner/trajectory.hpp"

namespace loewner::csv {

/// Formats with 17 significant digits so doubles round-trip.
[[nodiscard]] std::string format_double(double x);

/// Reads a `t,value` table. Lines starting with '#' and blank lines are skipped.
[[nodiscard]] SampledTable read_table(std::istream& in);
[[nodiscard]] SampledTable read_table_file(const std::string& path);

void write_table(std::ostream& out, const SampledTable& table);

/// `t,value` with a trailing `# terminal=swallowed t=<tau>` line when swallowed.
void write_trajectory(std::ostream& out, const BoundaryTrajectory& traj);
/// `t,re,im` with the same trailing terminal line.
void write_trajectory(std::ostream& out, const InteriorTrajectory& traj);

/// Generic header + rows writer used for multi-column outputs.
void write_rows(std::ostream& out, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows);

}  // namespace loewner::csv
