#include "oracles.hpp"
#include "speclab/domain.hpp"
#include "speclab/error.hpp"

#include <doctest.h>

#include <random>

using namespace speclab;

TEST_CASE("interval sets: measure, diameter and q") {
  const auto c = oracle::make({{"-1/2", "1/2"}});
  CHECK(c.measure() == 1);
  CHECK(c.size() == 1);
  CHECK(c.diameter() == 1);
  CHECK(c.common_denominator() == 2);

  const auto t = oracle::make({{"1", "3/2"}, {"0", "1/2"}});
  CHECK(t.measure() == 1);
  CHECK(t.size() == 2);
  CHECK(t.diameter() == Rational(3, 2));
  CHECK(t.common_denominator() == 2);
  CHECK(t.intervals().front().lo == 0);
}

TEST_CASE("interval sets: errors") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalConsistency;
  };
  CHECK(kind([] { oracle::make({{"0", "1/2"}, {"1/4", "1"}}); }) == ErrorKind::OverlappingIntervals);
  CHECK(kind([] { IntervalSet::from_rational({}); }) == ErrorKind::EmptyInput);
  CHECK(kind([] { oracle::make({{"0", "2"}}); }) == ErrorKind::MeasureNotOne);
  CHECK(kind([] { IntervalSet::from_double({{0.0, 1.0}}).intervals(); }) == ErrorKind::FloatModeUnsupported);
}

TEST_CASE("touching intervals merge; normalization scales") {
  const auto m = oracle::make({{"0", "1/2"}, {"1/2", "1"}});
  CHECK(m.size() == 1);
  const auto n = IntervalSet::from_rational(oracle::raw({{"0", "1"}, {"2", "3"}}), true);
  CHECK(n.measure() == 1);
  CHECK(n.intervals()[1].lo == 1);
  CHECK(n.intervals()[1].hi == Rational(3, 2));
}

TEST_CASE("normalization is idempotent on measure-one sets") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto r = oracle::random_set(rng);
    const auto a = IntervalSet::from_rational(r, false);
    const auto b = IntervalSet::from_rational(r, true);
    REQUIRE(a.size() == b.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      CHECK(a.intervals()[j].lo == b.intervals()[j].lo);
      CHECK(a.intervals()[j].hi == b.intervals()[j].hi);
    }
  }
}

TEST_CASE("autocorrelation examples") {
  const auto c = oracle::make({{"-1/2", "1/2"}});
  const auto a = autocorrelation(c);
  CHECK(evaluate(a, Rational(0)) == 1);
  CHECK(evaluate(a, Rational(1, 2)) == Rational(1, 2));
  CHECK(evaluate(a, Rational(1, 4)) == Rational(3, 4));
  CHECK(evaluate(a, Rational(-1, 2)) == Rational(1, 2));
  CHECK(evaluate(a, Rational(5)) == 0);
  CHECK(a.values.front() == 0);
  CHECK(a.values.back() == 0);

  const auto t = autocorrelation(oracle::make({{"0", "1/2"}, {"1", "3/2"}}));
  CHECK(evaluate(t, Rational(1, 2)) == 0);
  CHECK(evaluate(t, Rational(1)) == Rational(1, 2));
  CHECK(evaluate(t, Rational(3, 2)) == 0);
}

TEST_CASE("property: autocorrelation equals the overlap oracle exactly") {
  std::mt19937_64 rng(20240601);
  for (int s = 0; s < 20; ++s) {
    const auto r = oracle::random_set(rng);
    const auto omega = IntervalSet::from_rational(r);
    const auto a = autocorrelation(omega);
    for (std::size_t i = 1; i < a.breakpoints.size(); ++i) CHECK(a.breakpoints[i - 1] < a.breakpoints[i]);
    for (int k = 0; k < 50; ++k) {
      const Rational t = oracle::random_rational(rng, 4, 24);
      const Rational v = evaluate(a, t);
      CHECK(v == oracle::overlap(r, t));
      CHECK(v == evaluate(a, -t));
      CHECK(v >= 0);
      CHECK(v <= 1);
      if (abs(t) >= omega.diameter()) CHECK(v == 0);
    }
    CHECK(evaluate(a, Rational(0)) == 1);
  }
}
