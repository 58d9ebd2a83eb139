#pragma once

#include "speclab/rational.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace speclab {

/// Integer polynomial c_0 + c_1 z + ... + c_d z^d, trailing zeros trimmed.
struct IntPolynomial {
  std::vector<BigInt> coeffs;

  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> c);

  bool is_zero() const noexcept { return coeffs.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
  const BigInt& leading() const { return coeffs.back(); }

  BigInt evaluate(const BigInt& z) const;
  Rational evaluate(const Rational& z) const;
  std::complex<double> evaluate(std::complex<double> z) const;

  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
IntPolynomial operator-(const IntPolynomial& a);
IntPolynomial derivative(const IntPolynomial& p);
/// z^d p(1/z).
IntPolynomial reciprocal(const IntPolynomial& p);
/// Divides out the content and makes the leading coefficient positive.
IntPolynomial primitive_part(const IntPolynomial& p);

/// Quotient when `divisor` divides `p` exactly over ℤ[z], empty otherwise.
/// `divisor` must have leading coefficient ±1.
std::optional<IntPolynomial> divide_exact(const IntPolynomial& p, const IntPolynomial& divisor);

/// Primitive gcd over ℚ[z].
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);
/// p / gcd(p, p').
IntPolynomial squarefree_part(const IntPolynomial& p);

unsigned long euler_phi(unsigned long m);
/// m-th cyclotomic polynomial.
const IntPolynomial& cyclotomic(unsigned long m);

struct CyclotomicFactor {
  unsigned long index;  ///< m in Φ_m
  int multiplicity;
};

struct CyclotomicSplit {
  std::vector<CyclotomicFactor> factors;  ///< ascending in m
  IntPolynomial remainder;                ///< free of cyclotomic factors
};

/// Trial division by Φ_m for every m with φ(m) <= deg p.
CyclotomicSplit cyclotomic_split(const IntPolynomial& p);

/// For a self-reciprocal g of even degree 2m, the H of degree m with
/// g(z) = z^m H(z + 1/z).
IntPolynomial fold_self_reciprocal(const IntPolynomial& g);

/// Isolating interval (lo, hi] of a real root. lo == hi marks an exact
/// rational root.
struct RootInterval {
  Rational lo;
  Rational hi;
};

/// Sturm-sequence isolation of the distinct real roots of a squarefree `p`
/// in the open interval (lo, hi), in increasing order.
std::vector<RootInterval> isolate_real_roots(const IntPolynomial& p, const Rational& lo, const Rational& hi);

/// Bisects an isolating interval of a squarefree `p` until hi - lo <= width.
RootInterval refine_root(const IntPolynomial& p, RootInterval iv, const Rational& width);

}  // namespace speclab
