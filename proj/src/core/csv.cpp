#include "loewner/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "loewner/errors.hpp"

namespace loewner::csv {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& field, std::size_t line_no) {
  const std::string f = trim(field);
  double v = 0.0;
  const char* first = f.data();
  if (!f.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, f.data() + f.size(), v);
  if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size())
    throw ArgumentError("csv line " + std::to_string(line_no) + ": malformed number '" + f + "'");
  return v;
}

void write_terminal(std::ostream& out, const Terminal& terminal) {
  if (terminal.swallowed_at)
    out << "# terminal=swallowed t=" << format_double(*terminal.swallowed_at) << '\n';
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

SampledTable read_table(std::istream& in) {
  SampledTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    if (!header_seen) {
      if (l != "t,value") throw ArgumentError("csv header must be 't,value', got '" + l + "'");
      header_seen = true;
      continue;
    }
    const auto comma = l.find(',');
    if (comma == std::string::npos || l.find(',', comma + 1) != std::string::npos)
      throw ArgumentError("csv line " + std::to_string(line_no) + ": expected two columns");
    table.t.push_back(to_double(l.substr(0, comma), line_no));
    table.value.push_back(to_double(l.substr(comma + 1), line_no));
  }
  if (!header_seen) throw ArgumentError("csv input has no 't,value' header");
  table.validate();
  return table;
}

SampledTable read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path + "'");
  return read_table(in);
}

void write_table(std::ostream& out, const SampledTable& table) {
  out << "t,value\n";
  for (std::size_t i = 0; i < table.t.size(); ++i)
    out << format_double(table.t[i]) << ',' << format_double(table.value[i]) << '\n';
}

void write_trajectory(std::ostream& out, const BoundaryTrajectory& traj) {
  out << "t,value\n";
  for (std::size_t i = 0; i < traj.size(); ++i)
    out << format_double(traj.t[i]) << ',' << format_double(traj.value[i]) << '\n';
  write_terminal(out, traj.terminal);
}

void write_trajectory(std::ostream& out, const InteriorTrajectory& traj) {
  out << "t,re,im\n";
  for (std::size_t i = 0; i < traj.size(); ++i)
    out << format_double(traj.t[i]) << ',' << format_double(traj.value[i].real()) << ','
        << format_double(traj.value[i].imag()) << '\n';
  write_terminal(out, traj.terminal);
}

void write_rows(std::ostream& out, const std::vector<std::string>& header,
                const std::vector<std::vector<double>>& rows) {
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

}  // namespace loewner::csv
