#include "loewner/driving_term.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "loewner/csv.hpp"
#include "loewner/errors.hpp"
#include "loewner/tangent_slit.hpp"

namespace loewner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw ArgumentError("malformed number '" + std::string(text) + "' in " + std::string(what));
  return v;
}

}  // namespace

void SampledTable::validate() const {
  if (t.empty()) throw ArgumentError("sampled table is empty");
  if (t.size() != value.size()) throw ArgumentError("sampled table columns differ in length");
  if (t.front() != 0.0) throw ArgumentError("sampled table must start at t = 0");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(value[i]))
      throw ArgumentError("sampled table has a non-finite entry");
    if (i > 0 && !(t[i] > t[i - 1]))
      throw ArgumentError("sampled table times must be strictly increasing");
  }
}

DrivingTerm DrivingTerm::constant(double c) {
  DrivingTerm d;
  d.kind_ = Kind::constant;
  d.param_ = c;
  d.t_max_ = kInf;
  return d;
}

DrivingTerm DrivingTerm::sqrt_forward(double c) {
  DrivingTerm d;
  d.kind_ = Kind::sqrt_forward;
  d.param_ = c;
  d.t_max_ = kInf;
  return d;
}

DrivingTerm DrivingTerm::lind(double c) {
  DrivingTerm d;
  d.kind_ = Kind::lind;
  d.param_ = c;
  d.t_max_ = 1.0;
  return d;
}

DrivingTerm DrivingTerm::tangent_circular(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ArgumentError("tangent_circular: radius must be positive");
  DrivingTerm d;
  d.kind_ = Kind::tangent_circular;
  d.param_ = r;
  d.t_max_ = r * r * tangent::kDefaultTMax;
  return d;
}

DrivingTerm DrivingTerm::sampled(SampledTable table) {
  table.validate();
  DrivingTerm d;
  d.kind_ = Kind::sampled;
  d.t_max_ = table.t.back();
  d.table_ = std::make_shared<const SampledTable>(std::move(table));
  return d;
}

DrivingTerm DrivingTerm::custom(std::string name, std::function<double(double)> fn, double t_max) {
  if (!fn) throw ArgumentError("custom driving term needs a callable");
  if (!(t_max > 0.0)) throw ArgumentError("custom driving term needs a positive domain");
  DrivingTerm d;
  d.kind_ = Kind::custom;
  d.t_max_ = t_max;
  d.fn_ = std::make_shared<const std::function<double(double)>>(std::move(fn));
  d.source_ = std::move(name);
  return d;
}

DrivingTerm DrivingTerm::with_offset(double offset) const {
  DrivingTerm d = *this;
  d.offset_ = offset;
  return d;
}

double DrivingTerm::eval_raw(double t) const {
  switch (kind_) {
    case Kind::constant:
      return param_;
    case Kind::sqrt_forward:
      return param_ * std::sqrt(t);
    case Kind::lind:
      return param_ - param_ * std::sqrt(1.0 - t);
    case Kind::tangent_circular:
      return tangent::scaled_driving_term(param_, t);
    case Kind::sampled: {
      const auto& ts = table_->t;
      const auto& vs = table_->value;
      if (ts.size() == 1) return vs.front();
      auto it = std::upper_bound(ts.begin(), ts.end(), t);
      std::size_t hi = static_cast<std::size_t>(it - ts.begin());
      if (hi >= ts.size()) return vs.back();
      const std::size_t lo = hi - 1;
      const double w = (t - ts[lo]) / (ts[hi] - ts[lo]);
      return vs[lo] + w * (vs[hi] - vs[lo]);
    }
    case Kind::custom:
      return (*fn_)(t);
  }
  return 0.0;
}

double DrivingTerm::operator()(double t) const {
  if (!(t >= 0.0) || t > t_max_) {
    std::ostringstream os;
    os << "driving term " << describe() << ": time " << t << " outside [0, " << t_max_ << "]";
    throw DomainError(os.str());
  }
  return eval_raw(t) + offset_;
}

std::vector<double> DrivingTerm::sample(std::span<const double> times) const {
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back((*this)(t));
  return out;
}

std::string DrivingTerm::describe() const {
  std::string base;
  switch (kind_) {
    case Kind::constant:
      base = "constant:" + csv::format_double(param_);
      break;
    case Kind::sqrt_forward:
      base = "sqrt:" + csv::format_double(param_);
      break;
    case Kind::lind:
      base = "lind:" + csv::format_double(param_);
      break;
    case Kind::tangent_circular:
      base = "tangent:" + csv::format_double(param_);
      break;
    case Kind::sampled:
      base = source_.empty() ? std::string("sampled") : "file:" + source_;
      break;
    case Kind::custom:
      base = "custom:" + source_;
      break;
  }
  if (offset_ != 0.0) {
    base += '@';
    if (offset_ > 0.0) base += '+';
    base += csv::format_double(offset_);
  }
  return base;
}

DrivingTerm DrivingTerm::parse(std::string_view spec) {
  std::string_view body = spec;
  double offset = 0.0;
  if (auto at = spec.rfind('@'); at != std::string_view::npos) {
    body = spec.substr(0, at);
    offset = parse_number(spec.substr(at + 1), spec);
  }
  const auto colon = body.find(':');
  if (colon == std::string_view::npos)
    throw ArgumentError("term spec '" + std::string(spec) + "' must look like <kind>:<value>");
  const std::string_view kind = body.substr(0, colon);
  const std::string_view arg = body.substr(colon + 1);

  DrivingTerm d;
  if (kind == "constant") {
    d = constant(parse_number(arg, spec));
  } else if (kind == "sqrt") {
    d = sqrt_forward(parse_number(arg, spec));
  } else if (kind == "lind") {
    d = lind(parse_number(arg, spec));
  } else if (kind == "tangent") {
    d = tangent_circular(parse_number(arg, spec));
  } else if (kind == "file") {
    if (arg.empty()) throw ArgumentError("file: term needs a path");
    d = sampled(csv::read_table_file(std::string(arg)));
    d.source_ = std::string(arg);
  } else {
    throw ArgumentError("unknown term kind '" + std::string(kind) + "'");
  }
  return d.with_offset(offset);
}

}  // namespace loewner
