#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <string_view>

namespace speclab {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::gmp_int, mp::et_off>;
/// Exact rational, always kept in lowest terms with positive denominator.
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
/// Variable-precision binary float. Precision is taken from the thread's
/// default at construction time, see PrecisionGuard.
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 256;

/// Sets the default BigFloat precision (in bits) for the current thread and
/// restores the previous value on destruction.
class PrecisionGuard {
public:
  explicit PrecisionGuard(unsigned bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
  unsigned saved_digits10_;
};

/// Parses "p/q" or an integer string. Throws Error(ParseError).
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

BigInt numerator_of(const Rational& r);
BigInt denominator_of(const Rational& r);
BigInt floor_of(const Rational& r);
/// r - m*floor(r/m), in [0, m) for m > 0.
Rational mod(const Rational& r, const Rational& m);
bool is_integer(const Rational& r);
BigInt lcm(const BigInt& a, const BigInt& b);
BigInt gcd(const BigInt& a, const BigInt& b);
double to_double(const Rational& r);
long long to_ll(const BigInt& v);

BigFloat to_bigfloat(const Rational& r);

}  // namespace speclab
