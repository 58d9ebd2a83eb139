#include "oracles.hpp"
#include "speclab/error.hpp"
#include "speclab/fourier.hpp"
#include "speclab/zeros.hpp"

#include <doctest.h>

#include <random>

using namespace speclab;

namespace {

std::vector<Rational> rational_fundamentals(const ZeroSet& z) {
  std::vector<Rational> out;
  for (const auto& e : z.fundamental()) {
    REQUIRE(e.exact);
    REQUIRE(e.exact->is_rational());
    out.push_back(e.exact->rational);
  }
  return out;
}

std::vector<Rational> list(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(parse_rational(x));
  return out;
}

}  // namespace

TEST_CASE("unit-circle polynomial") {
  auto p = unit_circle_polynomial(oracle::make({{"0", "1/2"}, {"1", "3/2"}}));
  if (p.leading() > 0) p = -p;
  REQUIRE(p.coeffs.size() == 4);
  CHECK(p.coeffs[0] == 1);
  CHECK(p.coeffs[1] == -1);
  CHECK(p.coeffs[2] == 1);
  CHECK(p.coeffs[3] == -1);
  auto u = unit_circle_polynomial(oracle::make({{"0", "1"}}));
  CHECK(u.degree() == 1);
  CHECK(abs(u.coeffs[0]) == 1);
  CHECK(u.coeffs[0] == -u.coeffs[1]);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto poly = unit_circle_polynomial(IntervalSet::from_rational(oracle::random_set(rng)));
    CHECK(poly.evaluate(BigInt(1)) == 0);
  }
  CHECK_THROWS_AS(unit_circle_polynomial(IntervalSet::from_double({{0.0, 1.0}})), Error);
}

TEST_CASE("zero sets of the basic examples") {
  const auto c = ZeroSet::build(oracle::make({{"-1/2", "1/2"}}));
  CHECK(c.period() == 2);
  CHECK(rational_fundamentals(c) == list({"1", "2"}));

  const auto t = ZeroSet::build(oracle::make({{"0", "1/2"}, {"1", "3/2"}}));
  CHECK(t.period() == 2);
  CHECK(rational_fundamentals(t) == list({"1/2", "3/2", "2"}));
  CHECK(t.basis_size() == 0);

  const auto u = ZeroSet::build(oracle::make({{"0", "1"}}));
  CHECK(u.period() == 1);
  CHECK(rational_fundamentals(u) == list({"1"}));
}

TEST_CASE("membership") {
  const auto u = ZeroSet::build(oracle::make({{"0", "1"}}));
  CHECK(u.contains(Frequency(Rational(3))) == ZeroVerdict::Yes);
  CHECK(u.contains(Frequency(Rational(5, 2))) == ZeroVerdict::No);
  CHECK(u.contains(Frequency(Rational(0))) == ZeroVerdict::No);
  CHECK(u.contains(Frequency(Rational(-4))) == ZeroVerdict::Yes);
  const auto t = ZeroSet::build(oracle::make({{"0", "1/2"}, {"1", "3/2"}}));
  CHECK(t.contains(Frequency(Rational(7, 2))) == ZeroVerdict::Yes);
  CHECK(t.contains(Frequency(Rational(1))) == ZeroVerdict::No);
  CHECK(t.contains(Frequency(Rational(4))) == ZeroVerdict::Yes);
}

TEST_CASE("algebraic zeros of a symmetric three-interval set") {
  const auto r = oracle::raw({{"0", "1/6"}, {"1/2", "7/6"}, {"3/2", "5/3"}});
  const auto z = ZeroSet::build(IntervalSet::from_rational(r));
  CHECK(z.basis_size() == 2);
  const auto scan = oracle::scan_zeros(r, 6.0L, 1e-3L, 1e-20L);
  REQUIRE_FALSE(scan.empty());
  CHECK(z.smallest().mid() == doctest::Approx(static_cast<double>(scan.front())).epsilon(1e-9));
  // a0 and q - a0 are zeros; a0 + 1/2 is not.
  CHECK(z.contains(Frequency::basis(0)) == ZeroVerdict::Yes);
  CHECK(z.contains(Frequency(Rational(6)) - Frequency::basis(0)) == ZeroVerdict::Yes);
  CHECK(z.contains(Frequency::basis(0) + Frequency(Rational(1, 2))) == ZeroVerdict::No);
  CHECK(z.describe(Frequency(Rational(1, 2)) + Frequency::basis(1, -2)) == "1/2 - 2*a1");
}

TEST_CASE("property: soundness, exactness and completeness on random sets") {
  std::mt19937_64 rng(5);
  for (int s = 0; s < 10; ++s) {
    const auto r = oracle::random_set(rng, 3);
    const auto omega = IntervalSet::from_rational(r);
    CAPTURE(s);
    const auto z = ZeroSet::build(omega);
    const double q = z.period().convert_to<double>();
    for (const auto& e : z.fundamental()) {
      const auto fine = z.refine(e, 1e-12);
      CHECK(fine.radius <= 1e-12);
      CHECK(std::abs(ft_indicator(omega, fine.mid())) <= 1e-10);
      CHECK(std::abs(oracle::transform(r, static_cast<long double>(fine.mid()))) <= 1e-10L);
      if (e.tag == EnclosureTag::Rational) CHECK(e.radius == 0.0);
    }
    for (std::size_t i = 1; i < z.fundamental().size(); ++i) {
      CHECK(z.fundamental()[i - 1].upper() < z.fundamental()[i].lower());
    }
    // Dense scan over (0, q]: no near-zero far from a reported zero.
    const long steps = static_cast<long>(q / 1e-4);
    for (long i = 1; i <= steps; ++i) {
      const long double x = static_cast<long double>(i) * 1e-4L;
      if (oracle::power(r, x) >= 1e-16L) continue;
      bool near = false;
      for (const auto& e : z.fundamental()) near = near || std::abs(e.mid() - static_cast<double>(x)) <= 1e-3;
      CHECK(near);
    }
    for (long double m : oracle::scan_zeros(r, static_cast<long double>(q), 1e-3L, 1e-18L)) {
      bool near = false;
      for (const auto& e : z.fundamental()) near = near || std::abs(e.mid() - static_cast<double>(m)) <= 1e-6;
      CAPTURE(static_cast<double>(m));
      CHECK(near);
    }
  }
}

TEST_CASE("property: membership is q-periodic") {
  std::mt19937_64 rng(6);
  const auto z = ZeroSet::build(oracle::make({{"0", "1/3"}, {"1", "4/3"}, {"2", "7/3"}}));
  const Rational q(z.period());
  for (int i = 0; i < 100; ++i) {
    Rational x = oracle::random_rational(rng, 10, 6);
    if (x == 0 || x + q == 0) continue;
    CHECK(z.contains(Frequency(x)) == z.contains(Frequency(x + q)));
  }
}

TEST_CASE("float mode finds the same zeros but is not certified") {
  const auto f = ZeroSet::build(IntervalSet::from_double({{0.0, 0.5}, {1.0, 1.5}}), 4.5);
  CHECK_FALSE(f.certified());
  const double expect[] = {0.5, 1.5, 2.0, 2.5, 3.5, 4.0, 4.5};
  REQUIRE(f.fundamental().size() == 7);
  for (int i = 0; i < 7; ++i) CHECK(f.fundamental()[i].mid() == doctest::Approx(expect[i]).epsilon(1e-10));
  CHECK_THROWS_AS(ZeroSet::build(IntervalSet::from_double({{0.0, 1.0}})), Error);
}
