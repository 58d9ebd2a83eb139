#include "oracles.hpp"
#include "speclab/polynomial.hpp"

#include <doctest.h>

#include <random>

using namespace speclab;

namespace {

IntPolynomial poly(std::initializer_list<long> c) {
  std::vector<BigInt> v;
  for (long x : c) v.emplace_back(x);
  return IntPolynomial(std::move(v));
}

}  // namespace

TEST_CASE("cyclotomic polynomials match the root-product oracle") {
  for (unsigned long m = 1; m <= 40; ++m) {
    const auto& c = cyclotomic(m);
    const auto o = oracle::cyclotomic(m);
    REQUIRE(c.coeffs.size() == o.size());
    for (std::size_t i = 0; i < o.size(); ++i) CHECK(c.coeffs[i] == o[i]);
    CHECK(c.degree() == static_cast<int>(euler_phi(m)));
  }
}

TEST_CASE("cyclotomic split examples") {
  const auto s = cyclotomic_split(poly({1, -1, 1, -1}));
  REQUIRE(s.factors.size() == 2);
  CHECK(s.factors[0].index == 1);
  CHECK(s.factors[1].index == 4);
  CHECK(s.remainder.degree() == 0);

  const auto u = cyclotomic_split(poly({1, -1}));
  REQUIRE(u.factors.size() == 1);
  CHECK(u.factors[0].index == 1);
  CHECK(u.remainder.degree() == 0);

  const auto g = cyclotomic_split(poly({-1, -1, 1}));
  CHECK(g.factors.empty());
  CHECK(g.remainder.degree() == 2);

  const auto r = cyclotomic_split(poly({1, -1, 0, -1, 1}));
  CHECK(r.remainder.degree() == 0);
}

TEST_CASE("property: split factors multiply back to the input") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> idx(1, 12);
  for (int t = 0; t < 60; ++t) {
    IntPolynomial p = poly({1});
    const int f = 1 + t % 3;
    for (int i = 0; i < f; ++i) p = p * cyclotomic(static_cast<unsigned long>(idx(rng)));
    IntPolynomial extra = poly({coef(rng), coef(rng), 3});
    p = p * extra;
    const auto s = cyclotomic_split(p);
    IntPolynomial back = s.remainder;
    for (const auto& c : s.factors) {
      for (int m = 0; m < c.multiplicity; ++m) back = back * cyclotomic(c.index);
    }
    CHECK((back == p || back == -p));
    for (unsigned long m = 1; m <= 60; ++m) {
      if (static_cast<int>(euler_phi(m)) > s.remainder.degree()) continue;
      CHECK_FALSE(divide_exact(s.remainder, cyclotomic(m)).has_value());
    }
  }
}

TEST_CASE("gcd, squarefree part and reciprocal") {
  const auto a = poly({-1, 0, 1});  // z^2 - 1
  const auto b = poly({1, 2, 1});   // (z + 1)^2
  CHECK(gcd(a, b) == poly({1, 1}));
  CHECK(squarefree_part(b * poly({-2, 1})) == poly({-2, -1, 1}));
  CHECK(reciprocal(poly({1, 2, 3})) == poly({3, 2, 1}));
}

TEST_CASE("folding a self-reciprocal polynomial") {
  // z^2 - z + 1 = z (z + 1/z - 1).
  CHECK(fold_self_reciprocal(poly({1, -1, 1})) == poly({-1, 1}));
  // z^4 + 1 = z^2 ((z + 1/z)^2 - 2).
  CHECK(fold_self_reciprocal(poly({1, 0, 0, 0, 1})) == poly({-2, 0, 1}));
}

TEST_CASE("Sturm isolation finds each real root once") {
  // (x - 1/2)(x^2 - 2) on (-2, 2): roots -√2, 1/2, √2.
  const auto p = poly({2, -4, -1, 2});
  const auto roots = isolate_real_roots(p, Rational(-2), Rational(2));
  REQUIRE(roots.size() == 3);
  const double expect[] = {-std::sqrt(2.0), 0.5, std::sqrt(2.0)};
  for (int i = 0; i < 3; ++i) {
    const auto fine = refine_root(p, roots[i], Rational(1, 1000000));
    CHECK(to_double(fine.lo) <= expect[i] + 1e-12);
    CHECK(to_double(fine.hi) >= expect[i] - 1e-12);
  }
}
