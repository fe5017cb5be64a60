#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace loewner {

/// Strictly increasing time stamps starting at 0, with one value per stamp.
struct SampledTable {
  std::vector<double> t;
  std::vector<double> value;

  /// Throws ArgumentError unless the table is non-empty, sized consistently,
  /// starts at t = 0 and is strictly increasing with finite entries.
  void validate() const;
};

/// A real driving function lambda(t) (half-plane) or u(t) (disk angle).
///
/// Closed forms:
///   constant(c)          c
///   sqrt_forward(c)      c * sqrt(t)                       t >= 0
///   lind(c)              c - c * sqrt(1 - t)               0 <= t <= 1
///   tangent_circular(r)  r * lambda_1(t / r^2)             0 <= t <= r^2 * t_max
/// plus piecewise-linear sampled tables and arbitrary callables.
/// Every kind carries an additive offset. Values are immutable; copies share
/// the sampled table.
class DrivingTerm {
 public:
  enum class Kind { constant, sqrt_forward, lind, tangent_circular, sampled, custom };

  static DrivingTerm constant(double c);
  static DrivingTerm sqrt_forward(double c);
  static DrivingTerm lind(double c);
  static DrivingTerm tangent_circular(double r);
  static DrivingTerm sampled(SampledTable table);
  /// Wraps a callable defined on [0, t_max]. `name` is used by describe().
  static DrivingTerm custom(std::string name, std::function<double(double)> fn, double t_max);

  /// Parses `constant:<c>`, `sqrt:<c>`, `lind:<c>`, `tangent:<r>` or
  /// `file:<path>` (CSV with header `t,value`). An optional `+<offset>` or
  /// `-<offset>` suffix after `@` sets the offset, e.g. `lind:4@+1`.
  static DrivingTerm parse(std::string_view spec);

  [[nodiscard]] DrivingTerm with_offset(double offset) const;

  /// lambda(t). Throws DomainError outside [0, t_max()].
  [[nodiscard]] double operator()(double t) const;

  /// Evaluates on a batch of times.
  [[nodiscard]] std::vector<double> sample(std::span<const double> times) const;

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double parameter() const noexcept { return param_; }
  [[nodiscard]] double offset() const noexcept { return offset_; }
  /// Right end of the time domain (infinity for unbounded kinds).
  [[nodiscard]] double t_max() const noexcept { return t_max_; }
  [[nodiscard]] const SampledTable* table() const noexcept { return table_.get(); }

  /// The term-string form; round-trips through parse() for closed forms.
  /// Sampled terms print as `file:<source>` when loaded from a file.
  [[nodiscard]] std::string describe() const;

 private:
  DrivingTerm() = default;
  [[nodiscard]] double eval_raw(double t) const;

  Kind kind_ = Kind::constant;
  double param_ = 0.0;
  double offset_ = 0.0;
  double t_max_ = 0.0;
  std::shared_ptr<const SampledTable> table_;
  std::shared_ptr<const std::function<double(double)>> fn_;
  std::string source_;
};

/// Free-function spelling of DrivingTerm::operator().
[[nodiscard]] inline double eval_driving(const DrivingTerm& term, double t) { return term(t); }

}  // namespace loewner
