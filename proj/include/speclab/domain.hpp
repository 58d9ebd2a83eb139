#pragma once

#include "speclab/rational.hpp"

#include <utility>
#include <vector>

namespace speclab {

enum class Mode { ExactRational, Float };

struct Interval {
  Rational lo;
  Rational hi;
};

/// A bounded set given as a finite union of disjoint open intervals of total
/// measure one. Intervals are sorted; intervals that touch at an endpoint are
/// merged on construction.
///
/// In float mode only the double endpoints are available and every exact
/// operation throws FloatModeUnsupported.
class IntervalSet {
public:
  /// Builds from exact endpoint pairs. Without `normalize` a set whose
  /// measure is not 1 is rejected; with it every endpoint is divided by the
  /// measure.
  static IntervalSet from_rational(std::vector<std::pair<Rational, Rational>> raw, bool normalize = false);
  static IntervalSet from_double(std::vector<std::pair<double, double>> raw, bool normalize = false);

  Mode mode() const noexcept { return mode_; }
  bool exact() const noexcept { return mode_ == Mode::ExactRational; }
  std::size_t size() const noexcept { return approx_.size(); }

  const std::vector<Interval>& intervals() const;
  const std::vector<std::pair<double, double>>& approx_intervals() const noexcept { return approx_; }

  const Rational& measure() const;
  const Rational& diameter() const;
  /// Least common denominator of all endpoints.
  const BigInt& common_denominator() const;

  double diameter_approx() const noexcept { return approx_.back().second - approx_.front().first; }
  /// max |x| over the closure of the set.
  double max_abs_approx() const noexcept;

private:
  Mode mode_ = Mode::ExactRational;
  std::vector<Interval> exact_;
  std::vector<std::pair<double, double>> approx_;
  Rational measure_;
  Rational diameter_;
  BigInt q_{1};
};

/// Continuous piecewise-linear function, zero outside [front, back].
struct PiecewiseLinear {
  std::vector<Rational> breakpoints;
  std::vector<Rational> values;
};

/// measure(Ω ∩ (Ω + t)).
Rational overlap_measure(const IntervalSet& omega, const Rational& t);

/// Exact autocorrelation A(t) = measure(Ω ∩ (Ω + t)) as a piecewise-linear
/// function supported in [-diameter, diameter].
PiecewiseLinear autocorrelation(const IntervalSet& omega);

Rational evaluate(const PiecewiseLinear& f, const Rational& t);

}  // namespace speclab
