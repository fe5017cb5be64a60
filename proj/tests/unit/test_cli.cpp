#include <doctest.h>

#include "rel_approx.hpp"
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "loewner/cli.hpp"
#include "loewner/errors.hpp"

using loewner::testing::rel;
using namespace loewner;

namespace {

struct Outcome {
  int code = 0;
  std::string out, err;
};

Outcome invoke(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"loewner"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string last_line(const std::string& s) {
  std::string t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.find_last_of('\n') + 1);
}

std::vector<double> split_doubles(const std::string& line) {
  std::vector<double> v;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  return v;
}

}  // namespace

TEST_CASE("grid grammar") {
  const std::vector<double> lin = cli::parse_grid("lin:0:1:5");
  REQUIRE(lin.size() == 5);
  CHECK(lin[2] == 0.5);
  CHECK(lin.back() == 1.0);
  const std::vector<double> lg = cli::parse_grid("log:1e-4:1:5");
  CHECK(lg[1] == rel(1e-3));
  CHECK(lg.back() == 1.0);
  CHECK(cli::parse_grid("0,0.25,1") == std::vector<double>{0.0, 0.25, 1.0});
  for (const char* bad : {"lin:0:1", "lin:1:0:5", "log:0:1:5", "0.5,0.25", "lin:0:1:x", "abc", "-1,0", "lin:0:1:1"})
    CHECK_THROWS_AS((void)cli::parse_grid(bad), ArgumentError);
}

TEST_CASE("evolve writes a CSV trajectory") {
  const Outcome o = invoke({"evolve", "--geometry", "halfplane", "--term", "constant:0", "--start", "0,2", "--t-end", "0.5"});
  REQUIRE(o.code == 0);
  CHECK(o.out.rfind("t,re,im\n", 0) == 0);
  const std::vector<double> v = split_doubles(last_line(o.out));
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 0.5);
  // sqrt(z^2 + 4t) with z = 2i, t = 1/2 is i sqrt(2).
  CHECK(std::abs(v[1]) <= 1e-8);
  CHECK(std::abs(v[2] - std::sqrt(2.0)) <= 1e-8);
}

TEST_CASE("evolve on a grid and to a file") {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / "loewner_cli_test.csv";
  const std::string p = path.string();
  const Outcome o = invoke({"evolve", "--geometry", "halfplane", "--term", "sqrt:1", "--start", "2", "--t-end", "1",
                            "--t-grid", "lin:0:1:11", "--out", p.c_str()});
  REQUIRE(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string line;
  int rows = 0;
  std::stringstream lines(buf.str());
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#') ++rows;
  CHECK(rows == 12);
  std::filesystem::remove(path);
}

TEST_CASE("critical y-sequence as JSON") {
  const Outcome o = invoke({"critical", "--mode", "y-sequence", "--n", "5"});
  REQUIRE(o.code == 0);
  const nlohmann::json j = nlohmann::json::parse(o.out);
  REQUIRE(j["y_sequence"].size() == 5);
  CHECK(j["y_sequence"][0].get<double>() == rel(2.0));
  CHECK(j["y_sequence"][1].get<double>() == rel(2.0 * std::sqrt(2.0)));
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"evolve", "--bogus"}).code == cli::kExitUsage);
  const Outcome bad_term = invoke({"evolve", "--geometry", "halfplane", "--term", "wobble:1", "--start", "0,1", "--t-end", "1"});
  CHECK(bad_term.code == cli::kExitUsage);
  CHECK(bad_term.err.find("usage error") != std::string::npos);
  CHECK(invoke({"trace", "--term", "constant:0", "--t-grid", "lin:1:0:3"}).code == cli::kExitUsage);
  CHECK(invoke({"norm", "--input", "/nonexistent/file.csv"}).code == cli::kExitUsage);
  // A disk angle on the antipode of u(0) cannot be converted.
  const Outcome fail = invoke({"convert", "--direction", "d2h", "--term", "constant:0", "--start", "3.141592653589793",
                               "--t-grid", "lin:0:1:5"});
  CHECK(fail.code == cli::kExitFailure);
  CHECK_FALSE(fail.err.empty());
}

TEST_CASE("output is deterministic") {
  const auto once = [] {
    return invoke({"singular", "--term", "lind:4", "--t-end", "0.9", "--t-grid", "lin:0:0.9:10"}).out;
  };
  const std::string a = once();
  CHECK_FALSE(a.empty());
  CHECK(a == once());
  const auto crit = [] { return invoke({"critical", "--mode", "c-iteration", "--c", "3.9", "--eps", "1e-6", "--n", "100"}).out; };
  CHECK(crit() == crit());
}

TEST_CASE("tangent, trace, convert and norm subcommands") {
  const Outcome tan = invoke({"tangent", "--t-grid", "0,1e-3,0.01"});
  REQUIRE(tan.code == 0);
  CHECK(tan.out.find("alpha") != std::string::npos);

  const Outcome tr = invoke({"trace", "--term", "constant:0", "--t-grid", "0.25,1"});
  REQUIRE(tr.code == 0);
  const std::vector<double> v = split_doubles(last_line(tr.out));
  REQUIRE(v.size() == 3);
  CHECK(std::abs(v[2] - 2.0) <= 1e-4);

  const std::filesystem::path path = std::filesystem::temp_directory_path() / "loewner_cli_norm.csv";
  const std::string p = path.string();
  const Outcome conv = invoke({"convert", "--direction", "h2d", "--term", "lind:4", "--start", "2", "--t-grid", "lin:0:1:101",
                               "--out", p.c_str()});
  REQUIRE(conv.code == 0);
  const Outcome nm = invoke({"norm", "--input", p.c_str(), "--exponent", "0.5"});
  REQUIRE(nm.code == 0);
  const nlohmann::json j = nlohmann::json::parse(nm.out);
  CHECK(j.contains("sup_norm"));
  std::filesystem::remove(path);
}

TEST_CASE("paper-repro runs a section") {
  const Outcome o = invoke({"paper-repro", "--section", "4"});
  CHECK(o.code == 0);
  int pass = 0;
  std::stringstream lines(o.out);
  std::string line;
  while (std::getline(lines, line))
    if (line.rfind("PASS", 0) == 0) ++pass;
  CHECK(pass == 4);
  CHECK(invoke({"paper-repro", "--section", "7"}).code == cli::kExitUsage);
}
