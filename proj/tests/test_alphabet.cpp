#include "oracles.hpp"
#include "speclab/alphabet.hpp"
#include "speclab/fourier.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace speclab;

TEST_CASE("minimal gap") {
  CHECK(min_gap(ZeroSet::build(oracle::make({{"0", "1"}}))).mid() == 1.0);
  CHECK(min_gap(ZeroSet::build(oracle::make({{"0", "1/2"}, {"1", "3/2"}}))).mid() == 0.5);
  CHECK(min_gap(ZeroSet::build(oracle::make({{"-1/2", "1/2"}}))).mid() == 1.0);
}

TEST_CASE("gap bound against an independent scan") {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const auto c = oracle::make({{"-1/2", "1/2"}});
  const double d1 = max_gap_bound(c, 1.0);
  CHECK(d1 == doctest::Approx(2 * oracle::gap_h(1 / pi2, 1.0)).epsilon(1e-4));
  CHECK(d1 == doctest::Approx(1.2).epsilon(0.1));
  CHECK(gap_bound_predicate(1 / pi2, 1.0, d1 / 2) < 1.0);

  const auto t = oracle::make({{"0", "1/2"}, {"1", "3/2"}});
  const double d2 = max_gap_bound(t, 0.5);
  CHECK(d2 >= 4.0);
  CHECK(d2 <= 5.0);
  CHECK(d2 == doctest::Approx(2 * oracle::gap_h(4 / pi2, 0.5)).epsilon(1e-4));
  CHECK(gap_bound_predicate(4 / pi2, 0.5, d2 / 2) < 1.0);
  // Rounded up: the bound never undershoots the true threshold.
  CHECK(d2 / 2 >= oracle::gap_h(4 / pi2, 0.5) * (1 - 1e-5));
}

TEST_CASE("gap bound grows with the number of intervals") {
  std::mt19937_64 rng(2);
  const auto one = oracle::make({{"0", "1"}});
  const auto two = oracle::make({{"0", "1/2"}, {"1", "3/2"}});
  const auto four = oracle::make({{"0", "1/4"}, {"1/2", "3/4"}, {"1", "5/4"}, {"3/2", "7/4"}});
  for (double delta : {0.25, 0.5, 1.0}) {
    CHECK(max_gap_bound(one, delta) <= max_gap_bound(two, delta));
    CHECK(max_gap_bound(two, delta) <= max_gap_bound(four, delta));
  }
}

TEST_CASE("alphabets of the basic examples") {
  const auto u = build_alphabet(ZeroSet::build(oracle::make({{"0", "1"}})));
  REQUIRE(u.size() == 1);
  CHECK(u.symbols[0] == Frequency(Rational(1)));

  const auto t = build_alphabet(ZeroSet::build(oracle::make({{"0", "1/2"}, {"1", "3/2"}})));
  std::vector<Frequency> expect;
  for (const char* s : {"1/2", "3/2", "2", "5/2", "7/2", "4"}) expect.emplace_back(parse_rational(s));
  CHECK(t.symbols == expect);
  CHECK(t.delta.mid() == 0.5);
}

TEST_CASE("property: alphabet is exactly the zeros in (0, Delta]") {
  std::mt19937_64 rng(21);
  for (int s = 0; s < 10; ++s) {
    const auto r = oracle::random_set(rng, 3);
    const auto z = ZeroSet::build(IntervalSet::from_rational(r));
    const auto a = build_alphabet(z);
    if (a.gap_obstruction) {
      CHECK(a.size() == 0);
      CHECK(a.delta.lower() > a.max_gap);
      continue;
    }
    REQUIRE(a.size() >= 1);
    CHECK(a.enclosures[0].mid() == a.delta.mid());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(z.contains(a.symbols[i]) == ZeroVerdict::Yes);
      CHECK(a.enclosures[i].mid() > 0.0);
      CHECK(a.enclosures[i].lower() <= a.max_gap);
      if (i) CHECK(a.enclosures[i - 1].upper() < a.enclosures[i].lower());
    }
    // Non-symbols in (0, Delta] are not zeros.
    std::uniform_int_distribution<long> num(1, 1000);
    int tested = 0;
    while (tested < 20) {
      const Rational x(num(rng), 997);
      const Rational y = x * Rational(static_cast<long>(a.max_gap * 100), 100);
      bool symbol = false;
      for (const auto& f : a.symbols) symbol = symbol || f == Frequency(y);
      if (symbol || y <= 0) continue;
      ++tested;
      CHECK(std::abs(oracle::transform(r, static_cast<long double>(to_double(y)))) > 1e-12L);
      CHECK(z.contains(Frequency(y)) == ZeroVerdict::No);
    }
  }
}

TEST_CASE("an obstruction when Delta falls below delta") {
  const auto a = build_alphabet(ZeroSet::build(oracle::make({{"0", "1/3"}, {"1/2", "7/6"}})));
  CHECK(a.gap_obstruction);
  CHECK(a.size() == 0);
}

TEST_CASE("spectral gap") {
  const auto u = spectral_gap(oracle::make({{"0", "1"}}));
  CHECK(u.a == 1);
  CHECK(u.at_support_edge);
  const auto t = spectral_gap(oracle::make({{"0", "1/2"}, {"1", "3/2"}}));
  CHECK(t.a == Rational(1, 2));
  CHECK_FALSE(t.at_support_edge);

  std::mt19937_64 rng(22);
  for (int s = 0; s < 10; ++s) {
    const auto r = oracle::random_set(rng);
    const auto omega = IntervalSet::from_rational(r);
    const auto g = spectral_gap(omega);
    CHECK(g.a <= omega.diameter());
    CHECK(oracle::overlap(r, g.a) == 0);
    for (int i = 0; i < 20; ++i) {
      const Rational t = g.a * Rational(i, 20);
      CHECK(oracle::overlap(r, t) > 0);
    }
  }
}
