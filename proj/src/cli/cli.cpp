#include "loewner/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>

#include "loewner/bridge.hpp"
#include "loewner/critical_norm.hpp"
#include "loewner/csv.hpp"
#include "loewner/disk.hpp"
#include "loewner/driving_term.hpp"
#include "loewner/errors.hpp"
#include "loewner/halfplane.hpp"
#include "loewner/holder.hpp"
#include "loewner/repro.hpp"
#include "loewner/tangent_slit.hpp"
#include "loewner/trace.hpp"

namespace loewner::cli {

namespace {

using nlohmann::json;

double parse_double(std::string_view text, std::string_view what) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw ArgumentError("malformed number '" + std::string(text) + "' in " + std::string(what));
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

/// Sends output to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw ArgumentError("cannot open output file '" + path + "'");
  write(file);
  file.flush();
  if (!file) throw Error("failed writing output file '" + path + "'");
}

double lookup(const BoundaryTrajectory& traj, double t) {
  auto it = std::lower_bound(traj.t.begin(), traj.t.end(), t);
  if (it == traj.t.end() || *it != t) throw Error("trajectory has no sample at a requested time");
  return traj.value[static_cast<std::size_t>(it - traj.t.begin())];
}

void append_terminal(std::ostream& out, const std::optional<double>& tau) {
  if (tau) out << "# terminal=swallowed t=" << csv::format_double(*tau) << '\n';
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  std::vector<double> g;
  const auto parts = split(spec, ':');
  if (parts.size() == 4 && (parts[0] == "lin" || parts[0] == "log")) {
    const double a = parse_double(parts[1], spec);
    const double b = parse_double(parts[2], spec);
    int n = 0;
    auto [ptr, ec] = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), n);
    if (ec != std::errc{} || ptr != parts[3].data() + parts[3].size() || n < 2)
      throw ArgumentError("grid '" + std::string(spec) + "' needs an integer point count >= 2");
    if (!(b > a)) throw ArgumentError("grid '" + std::string(spec) + "' needs a < b");
    if (parts[0] == "lin") {
      for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
    } else {
      if (!(a > 0.0)) throw ArgumentError("log grid '" + std::string(spec) + "' needs a > 0");
      const double la = std::log(a), lb = std::log(b);
      for (int i = 0; i < n; ++i) g.push_back(std::exp(la + (lb - la) * i / (n - 1)));
    }
    g.front() = a;
    g.back() = b;
  } else if (parts.size() == 1) {
    for (std::string_view item : split(spec, ',')) g.push_back(parse_double(item, spec));
  } else {
    throw ArgumentError("grid '" + std::string(spec) + "' must be lin:a:b:n, log:a:b:n or a comma list");
  }
  for (std::size_t i = 1; i < g.size(); ++i)
    if (!(g[i] > g[i - 1])) throw ArgumentError("grid '" + std::string(spec) + "' must increase strictly");
  if (g.empty() || g.front() < 0.0) throw ArgumentError("grid '" + std::string(spec) + "' must be non-negative");
  return g;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Löwner evolution toolkit"};
  app.name("loewner");
  app.require_subcommand(1);

  // evolve
  std::string geometry, term_spec, start, out_path, grid_spec;
  double t_end = 0.0, tol = SolverOptions{}.tol;
  auto* evolve = app.add_subcommand("evolve", "Evolve an interior or boundary point");
  evolve->add_option("--geometry", geometry, "halfplane or disk")->required()->check(CLI::IsMember({"halfplane", "disk"}));
  evolve->add_option("--term", term_spec, "Driving term spec")->required();
  evolve->add_option("--start", start, "re,im for an interior point; a single real for a boundary point/angle")->required();
  evolve->add_option("--t-end", t_end, "Final time")->required();
  evolve->add_option("--tol", tol, "Local error tolerance");
  evolve->add_option("--t-grid", grid_spec, "Record only these times (default: every step)");
  evolve->add_option("--out", out_path, "Output CSV (default: stdout)");

  // singular
  auto* singular = app.add_subcommand("singular", "Singular solutions h-, h+ from lambda(0)");
  singular->add_option("--term", term_spec, "Driving term spec")->required();
  singular->add_option("--t-end", t_end, "Final time")->required();
  singular->add_option("--t-grid", grid_spec, "Sample times (default lin:0:<t-end>:201)");
  singular->add_option("--tol", tol, "Local error tolerance");
  singular->add_option("--out", out_path, "Output CSV (default: stdout)");

  // trace
  auto* trace_cmd = app.add_subcommand("trace", "Reconstruct slit tips");
  trace_cmd->add_option("--term", term_spec, "Driving term spec")->required();
  trace_cmd->add_option("--t-grid", grid_spec, "Times")->required();
  trace_cmd->add_option("--tol", tol, "Local error tolerance");
  trace_cmd->add_option("--out", out_path, "Output CSV (default: stdout)");

  // tangent
  auto* tangent_cmd = app.add_subcommand("tangent", "Tangent-slit parameters alpha, beta, lambda");
  tangent_cmd->add_option("--t-grid", grid_spec, "Times in [0, 0.05]")->required();
  tangent_cmd->add_option("--out", out_path, "Output CSV (default: stdout)");

  // convert
  std::string direction;
  auto* convert = app.add_subcommand("convert", "Convert between half-plane and disk driving terms");
  convert->add_option("--direction", direction, "h2d or d2h")->required()->check(CLI::IsMember({"h2d", "d2h"}));
  convert->add_option("--term", term_spec, "Driving term spec")->required();
  convert->add_option("--start", start, "x0 (h2d) or alpha0 (d2h)")->required();
  convert->add_option("--t-grid", grid_spec, "Grid starting at 0")->required();
  convert->add_option("--tol", tol, "Local error tolerance");
  convert->add_option("--out", out_path, "Output CSV (default: stdout)");

  // norm
  std::string input, window_spec;
  double exponent = 0.5;
  auto* norm = app.add_subcommand("norm", "Hölder fit and sup-quotient norm of a t,value table");
  norm->add_option("--input", input, "Input CSV")->required();
  norm->add_option("--exponent", exponent, "Exponent of the sup-quotient norm");
  norm->add_option("--window", window_spec, "Fit window lo:hi (default 1e-6:1e-3)");

  // critical
  std::string mode;
  int n = 10;
  double c = 4.0, eps = 1e-6, c_lo = 3.5, c_hi = 4.5, c_step = 0.05;
  auto* critical_cmd = app.add_subcommand("critical", "Recursion zeros, c-iteration and collision threshold");
  critical_cmd->add_option("--mode", mode, "y-sequence, c-iteration or threshold")
      ->required()
      ->check(CLI::IsMember({"y-sequence", "c-iteration", "threshold"}));
  critical_cmd->add_option("--n", n, "Number of terms (y-sequence, c-iteration)");
  critical_cmd->add_option("--c", c, "c for the c-iteration");
  critical_cmd->add_option("--eps", eps, "eps for the c-iteration");
  critical_cmd->add_option("--c-lo", c_lo, "Smallest c of the threshold grid");
  critical_cmd->add_option("--c-hi", c_hi, "Largest c of the threshold grid");
  critical_cmd->add_option("--c-step", c_step, "Threshold grid step");
  critical_cmd->add_option("--out", out_path, "Output JSON (default: stdout)");

  // paper-repro
  std::string section;
  auto* repro_cmd = app.add_subcommand("paper-repro", "Run preset acceptance experiments");
  repro_cmd->add_option("--section", section, "2, 3, 4 or all")->required()->check(CLI::IsMember({"2", "3", "4", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "loewner: usage error: " << msg << '\n';
    return kExitUsage;
  }

  try {
    SolverOptions opt;
    opt.tol = tol;

    if (evolve->parsed()) {
      const DrivingTerm term = DrivingTerm::parse(term_spec);
      const auto coords = split(start, ',');
      if (coords.size() > 2) throw ArgumentError("--start takes re or re,im");
      const std::vector<double> grid = grid_spec.empty() ? std::vector<double>{} : parse_grid(grid_spec);
      if (coords.size() == 2) {
        const ComplexValue z{parse_double(coords[0], "--start"), parse_double(coords[1], "--start")};
        const InteriorTrajectory traj = geometry == "halfplane" ? halfplane::evolve_interior(term, z, t_end, opt, grid)
                                                                : disk::evolve_disk_interior(term, z, t_end, opt, grid);
        emit(out_path, out, [&](std::ostream& os) { csv::write_trajectory(os, traj); });
      } else {
        const double x0 = parse_double(coords[0], "--start");
        const BoundaryTrajectory traj = geometry == "halfplane" ? halfplane::evolve_boundary(term, x0, t_end, opt, grid)
                                                                : disk::evolve_disk_boundary(term, x0, t_end, opt, grid);
        emit(out_path, out, [&](std::ostream& os) { csv::write_trajectory(os, traj); });
      }
    } else if (singular->parsed()) {
      const DrivingTerm term = DrivingTerm::parse(term_spec);
      if (!(t_end > 0.0)) throw ArgumentError("--t-end must be positive");
      const std::vector<double> grid =
          parse_grid(grid_spec.empty() ? "lin:0:" + csv::format_double(t_end) + ":201" : grid_spec);
      if (grid.back() > t_end) throw ArgumentError("--t-grid extends past --t-end");
      const BoundaryTrajectory lo = halfplane::singular_minus(term, t_end, opt, grid);
      const BoundaryTrajectory hi = halfplane::singular_plus(term, t_end, opt, grid);
      std::vector<std::vector<double>> rows;
      for (double t : grid) {
        if (t > lo.back_time() || t > hi.back_time()) break;
        rows.push_back({t, lookup(lo, t), lookup(hi, t), term(t)});
      }
      emit(out_path, out, [&](std::ostream& os) {
        csv::write_rows(os, {"t", "h_minus", "h_plus", "lambda"}, rows);
        append_terminal(os, lo.terminal.swallowed_at ? lo.terminal.swallowed_at : hi.terminal.swallowed_at);
      });
    } else if (trace_cmd->parsed()) {
      const DrivingTerm term = DrivingTerm::parse(term_spec);
      const std::vector<double> grid = parse_grid(grid_spec);
      const auto tips = trace::extract_trace(term, grid, opt);
      std::vector<std::vector<double>> rows;
      for (const auto& p : tips) rows.push_back({p.t, p.tip.real(), p.tip.imag()});
      emit(out_path, out, [&](std::ostream& os) { csv::write_rows(os, {"t", "re", "im"}, rows); });
    } else if (tangent_cmd->parsed()) {
      const std::vector<double> grid = parse_grid(grid_spec);
      std::vector<std::vector<double>> rows;
      for (double t : grid) {
        const tangent::SlitParams p = tangent::solve_params(t);
        rows.push_back({t, p.alpha, p.beta, p.gamma_prevertex});
      }
      emit(out_path, out, [&](std::ostream& os) { csv::write_rows(os, {"t", "alpha", "beta", "lambda"}, rows); });
    } else if (convert->parsed()) {
      const DrivingTerm term = DrivingTerm::parse(term_spec);
      const double s0 = parse_double(start, "--start");
      const std::vector<double> grid = parse_grid(grid_spec);
      const bridge::Conversion conv = direction == "h2d" ? bridge::halfplane_to_disk(term, s0, grid, opt)
                                                         : bridge::disk_to_halfplane(term, s0, grid, opt);
      emit(out_path, out, [&](std::ostream& os) {
        csv::write_table(os, conv.table);
        append_terminal(os, conv.swallowed_at);
        if (conv.partial) os << "# partial=true\n";
      });
    } else if (norm->parsed()) {
      const SampledTable table = csv::read_table_file(input);
      std::pair<double, double> window = kDefaultFitWindow;
      if (!window_spec.empty()) {
        const auto w = split(window_spec, ':');
        if (w.size() != 2) throw ArgumentError("--window must be lo:hi");
        window = {parse_double(w[0], "--window"), parse_double(w[1], "--window")};
      }
      if (!(exponent > 0.0 && exponent <= 1.0)) throw ArgumentError("--exponent must lie in (0, 1]");
      json j;
      try {
        const HolderFit fit = holder_exponent_fit(table.t, table.value, window, exponent);
        j = {{"exponent", fit.exponent},     {"coefficient", fit.coefficient},
             {"sup_norm", fit.sup_norm},     {"norm_exponent", fit.norm_exponent},
             {"grid", fit.grid}};
      } catch (const FitError& e) {
        j = {{"exponent", nullptr},
             {"coefficient", nullptr},
             {"sup_norm", holder_sup_norm(table.t, table.value, exponent)},
             {"norm_exponent", exponent},
             {"grid", std::to_string(table.t.size()) + " samples"},
             {"fit_error", e.what()}};
      }
      out << j.dump(2) << '\n';
    } else if (critical_cmd->parsed()) {
      json j;
      if (mode == "y-sequence") {
        json ys = json::array();
        for (const auto& s : critical::y_sequence(n)) ys.push_back(s.value);
        j["y_sequence"] = ys;
      } else if (mode == "c-iteration") {
        const critical::CIteration it = critical::c_iteration(c, eps, n);
        json values = json::array();
        for (const auto& s : it.states) values.push_back(s.value);
        j["c_iteration"] = {{"c", c},
                            {"eps", eps},
                            {"values", values},
                            {"verdict", it.verdict == critical::Verdict::stays_positive ? "stays_positive" : "crosses_zero"},
                            {"crossing_n", optional_json(it.crossing_index)},
                            {"lemma_lower_bound", critical::lemma_lower_bound(eps)}};
      } else {
        const auto cs = critical::c_grid(c_lo, c_hi, c_step);
        const auto ex = critical::collision_threshold_experiment(cs, critical::default_x0_grid(), opt);
        json rows = json::array();
        for (const auto& r : ex.rows)
          rows.push_back({{"c", r.c},
                          {"verdict", r.collides ? "collides_by_t1" : "no_collision"},
                          {"first_collision_t", optional_json(r.first_collision_t)},
                          {"x0", optional_json(r.x0)}});
        j["threshold_experiment"] = rows;
        j["threshold"] = optional_json(ex.threshold);
        j["monotone"] = ex.monotone;
      }
      emit(out_path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    } else if (repro_cmd->parsed()) {
      const std::vector<int> ids = section == "all" ? repro::all_criteria() : repro::criteria_for_section(std::stoi(section));
      bool all_passed = true;
      for (int id : ids) {
        const repro::CriterionResult r = repro::run_criterion(id);
        all_passed = all_passed && r.passed;
        out << repro::format_result(r) << '\n';
      }
      return all_passed ? kExitOk : kExitFailure;
    }
  } catch (const ArgumentError& e) {
    err << "loewner: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "loewner: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "loewner: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace loewner::cli
