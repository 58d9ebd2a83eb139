#include "speclab/domain.hpp"

#include "speclab/error.hpp"

#include <algorithm>
#include <cmath>

namespace speclab {

namespace {

template <typename T>
std::vector<std::pair<T, T>> sort_and_merge(std::vector<std::pair<T, T>> raw) {
  if (raw.empty()) throw Error(ErrorKind::EmptyInput, "no intervals given");
  for (const auto& [a, b] : raw) {
    if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "interval with a >= b");
  }
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<T, T>> merged;
  merged.push_back(raw.front());
  for (std::size_t i = 1; i < raw.size(); ++i) {
    auto& last = merged.back();
    if (raw[i].first < last.second) {
      throw Error(ErrorKind::OverlappingIntervals, "intervals overlap in positive measure");
    }
    if (raw[i].first == last.second) {
      last.second = raw[i].second;
    } else {
      merged.push_back(raw[i]);
    }
  }
  return merged;
}

}  // namespace

IntervalSet IntervalSet::from_rational(std::vector<std::pair<Rational, Rational>> raw, bool normalize) {
  auto merged = sort_and_merge(std::move(raw));
  Rational measure{0};
  for (const auto& [a, b] : merged) measure += b - a;
  if (measure != 1) {
    if (!normalize) {
      throw Error(ErrorKind::MeasureNotOne, "total measure is " + to_string(measure) + ", expected 1");
    }
    for (auto& [a, b] : merged) {
      a /= measure;
      b /= measure;
    }
    measure = 1;
  }

  IntervalSet s;
  s.mode_ = Mode::ExactRational;
  s.measure_ = measure;
  s.q_ = 1;
  for (const auto& [a, b] : merged) {
    s.exact_.push_back({a, b});
    s.approx_.emplace_back(to_double(a), to_double(b));
    s.q_ = lcm(s.q_, denominator_of(a));
    s.q_ = lcm(s.q_, denominator_of(b));
  }
  s.diameter_ = merged.back().second - merged.front().first;
  return s;
}

IntervalSet IntervalSet::from_double(std::vector<std::pair<double, double>> raw, bool normalize) {
  for (const auto& [a, b] : raw) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorKind::InvalidArgument, "non-finite endpoint");
  }
  auto merged = sort_and_merge(std::move(raw));
  double measure = 0.0;
  for (const auto& [a, b] : merged) measure += b - a;
  if (std::abs(measure - 1.0) > 1e-12) {
    if (!normalize) {
      throw Error(ErrorKind::MeasureNotOne, "total measure is " + std::to_string(measure) + ", expected 1");
    }
    for (auto& [a, b] : merged) {
      a /= measure;
      b /= measure;
    }
  }
  IntervalSet s;
  s.mode_ = Mode::Float;
  s.approx_ = std::move(merged);
  return s;
}

const std::vector<Interval>& IntervalSet::intervals() const {
  if (!exact()) throw Error(ErrorKind::FloatModeUnsupported, "exact endpoints requested in float mode");
  return exact_;
}

const Rational& IntervalSet::measure() const {
  if (!exact()) throw Error(ErrorKind::FloatModeUnsupported, "exact measure requested in float mode");
  return measure_;
}

const Rational& IntervalSet::diameter() const {
  if (!exact()) throw Error(ErrorKind::FloatModeUnsupported, "exact diameter requested in float mode");
  return diameter_;
}

const BigInt& IntervalSet::common_denominator() const {
  if (!exact()) throw Error(ErrorKind::FloatModeUnsupported, "common denominator requested in float mode");
  return q_;
}

double IntervalSet::max_abs_approx() const noexcept {
  return std::max(std::abs(approx_.front().first), std::abs(approx_.back().second));
}

Rational overlap_measure(const IntervalSet& omega, const Rational& t) {
  const auto& iv = omega.intervals();
  Rational total{0};
  for (const auto& x : iv) {
    for (const auto& y : iv) {
      const Rational lo = std::max(x.lo, y.lo + t);
      const Rational hi = std::min(x.hi, y.hi + t);
      if (hi > lo) total += hi - lo;
    }
  }
  return total;
}

PiecewiseLinear autocorrelation(const IntervalSet& omega) {
  const auto& iv = omega.intervals();
  std::vector<Rational> endpoints;
  for (const auto& x : iv) {
    endpoints.push_back(x.lo);
    endpoints.push_back(x.hi);
  }
  // Kinks of A can only occur where an endpoint of Ω+t crosses an endpoint of Ω.
  const Rational& diam = omega.diameter();
  std::vector<Rational> bps;
  for (const auto& u : endpoints) {
    for (const auto& v : endpoints) {
      const Rational d = u - v;
      if (d >= -diam && d <= diam) bps.push_back(d);
    }
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

  PiecewiseLinear f;
  f.breakpoints = std::move(bps);
  f.values.reserve(f.breakpoints.size());
  for (const auto& t : f.breakpoints) f.values.push_back(overlap_measure(omega, t));
  return f;
}

Rational evaluate(const PiecewiseLinear& f, const Rational& t) {
  const auto& x = f.breakpoints;
  if (x.empty() || t <= x.front() || t >= x.back()) {
    if (!x.empty() && t == x.front()) return f.values.front();
    if (!x.empty() && t == x.back()) return f.values.back();
    return Rational{0};
  }
  const auto it = std::upper_bound(x.begin(), x.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  if (x[lo] == t) return f.values[lo];
  const Rational w = (t - x[lo]) / (x[hi] - x[lo]);
  return f.values[lo] + w * (f.values[hi] - f.values[lo]);
}

}  // namespace speclab
