#include "speclab/rational.hpp"

#include "speclab/error.hpp"

#include <cctype>
#include <cmath>

namespace speclab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::OverlappingIntervals: return "OverlappingIntervals";
    case ErrorKind::MeasureNotOne: return "MeasureNotOne";
    case ErrorKind::FloatModeUnsupported: return "FloatModeUnsupported";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NonpositiveRadius: return "NonpositiveRadius";
    case ErrorKind::IncommensurableGrid: return "IncommensurableGrid";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::InternalConsistency: return "InternalConsistency";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) return false;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  out = BigInt(digits);
  return true;
}

}  // namespace

PrecisionGuard::PrecisionGuard(unsigned bits) : saved_digits10_(BigFloat::default_precision()) {
  BigFloat::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { BigFloat::default_precision(saved_digits10_); }

Rational parse_rational(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.remove_suffix(1);
  const auto slash = trimmed.find('/');
  BigInt num, den{1};
  if (slash == std::string_view::npos) {
    if (!parse_integer(trimmed, num)) throw Error(ErrorKind::ParseError, "not a rational: \"" + std::string(text) + "\"");
  } else {
    const auto lhs = trimmed.substr(0, slash);
    const auto rhs = trimmed.substr(slash + 1);
    if (!parse_integer(lhs, num) || !parse_integer(rhs, den) || rhs.front() == '-' || rhs.front() == '+') {
      throw Error(ErrorKind::ParseError, "not a rational: \"" + std::string(text) + "\"");
    }
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator: \"" + std::string(text) + "\"");
  }
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  const BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

BigInt numerator_of(const Rational& r) { return mp::numerator(r); }
BigInt denominator_of(const Rational& r) { return mp::denominator(r); }

BigInt floor_of(const Rational& r) {
  const BigInt n = numerator_of(r);
  const BigInt d = denominator_of(r);
  BigInt q = n / d;  // truncates toward zero
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

Rational mod(const Rational& r, const Rational& m) {
  return r - m * Rational(floor_of(r / m));
}

bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

BigInt gcd(const BigInt& a, const BigInt& b) { return mp::gcd(a, b); }

BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return BigInt(0);
  return mp::abs(a / gcd(a, b) * b);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

long long to_ll(const BigInt& v) { return v.convert_to<long long>(); }

BigFloat to_bigfloat(const Rational& r) {
  return BigFloat(numerator_of(r)) / BigFloat(denominator_of(r));
}

}  // namespace speclab
