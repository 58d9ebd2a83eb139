#include "speclab/polynomial.hpp"

#include "speclab/error.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>

namespace speclab {

namespace {

using QPoly = std::vector<Rational>;

void trim(std::vector<BigInt>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void trim(QPoly& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

QPoly to_q(const IntPolynomial& p) {
  QPoly out;
  out.reserve(p.coeffs.size());
  for (const auto& c : p.coeffs) out.emplace_back(c);
  return out;
}

IntPolynomial from_q(const QPoly& p) {
  BigInt den{1};
  for (const auto& c : p) den = lcm(den, denominator_of(c));
  std::vector<BigInt> out;
  out.reserve(p.size());
  for (const auto& c : p) out.push_back(numerator_of(c * Rational(den)));
  return primitive_part(IntPolynomial(std::move(out)));
}

QPoly q_remainder(QPoly a, const QPoly& b) {
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= factor * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

int sign_at(const IntPolynomial& p, const Rational& x) {
  const Rational v = p.evaluate(x);
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

std::vector<IntPolynomial> sturm_sequence(const IntPolynomial& p) {
  std::vector<IntPolynomial> seq{p, derivative(p)};
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    QPoly r = q_remainder(to_q(seq[seq.size() - 2]), to_q(seq.back()));
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    // Positive rescaling keeps the sign pattern.
    BigInt den{1};
    for (const auto& c : r) den = lcm(den, denominator_of(c));
    std::vector<BigInt> ic;
    for (const auto& c : r) ic.push_back(numerator_of(c * Rational(den)));
    IntPolynomial next(std::move(ic));
    BigInt g{0};
    for (const auto& c : next.coeffs) g = gcd(g, c);
    if (g > 1) {
      for (auto& c : next.coeffs) c /= g;
    }
    seq.push_back(std::move(next));
  }
  return seq;
}

int sign_variations(const std::vector<IntPolynomial>& seq, const Rational& x) {
  int count = 0;
  int prev = 0;
  for (const auto& s : seq) {
    const int v = sign_at(s, x);
    if (v == 0) continue;
    if (prev != 0 && v != prev) ++count;
    prev = v;
  }
  return count;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(coeffs); }

BigInt IntPolynomial::evaluate(const BigInt& z) const {
  BigInt acc{0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Rational IntPolynomial::evaluate(const Rational& z) const {
  Rational acc{0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + Rational(*it);
  return acc;
}

std::complex<double> IntPolynomial::evaluate(std::complex<double> z) const {
  std::complex<double> acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + it->convert_to<double>();
  return acc;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs.size() + b.coeffs.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a) {
  auto c = a.coeffs;
  for (auto& x : c) x = -x;
  return IntPolynomial(std::move(c));
}

IntPolynomial derivative(const IntPolynomial& p) {
  if (p.coeffs.size() <= 1) return {};
  std::vector<BigInt> c;
  for (std::size_t i = 1; i < p.coeffs.size(); ++i) c.push_back(p.coeffs[i] * static_cast<long>(i));
  return IntPolynomial(std::move(c));
}

IntPolynomial reciprocal(const IntPolynomial& p) {
  auto c = p.coeffs;
  std::reverse(c.begin(), c.end());
  return IntPolynomial(std::move(c));
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  BigInt g{0};
  for (const auto& c : p.coeffs) g = gcd(g, c);
  auto c = p.coeffs;
  if (p.leading() < 0) g = -g;
  for (auto& x : c) x /= g;
  return IntPolynomial(std::move(c));
}

std::optional<IntPolynomial> divide_exact(const IntPolynomial& p, const IntPolynomial& divisor) {
  if (divisor.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero polynomial");
  const BigInt& lead = divisor.leading();
  if (lead != 1 && lead != -1) throw Error(ErrorKind::InvalidArgument, "divisor must be monic up to sign");
  if (p.is_zero()) return IntPolynomial{};
  if (p.degree() < divisor.degree()) return std::nullopt;
  auto rem = p.coeffs;
  const int dd = divisor.degree();
  std::vector<BigInt> quot(static_cast<std::size_t>(p.degree() - dd + 1), BigInt(0));
  for (int k = p.degree() - dd; k >= 0; --k) {
    const BigInt f = rem[static_cast<std::size_t>(k + dd)] * lead;  // lead = ±1 so 1/lead = lead
    quot[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int i = 0; i <= dd; ++i) rem[static_cast<std::size_t>(k + i)] -= f * divisor.coeffs[static_cast<std::size_t>(i)];
  }
  for (const auto& r : rem) {
    if (r != 0) return std::nullopt;
  }
  return IntPolynomial(std::move(quot));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  QPoly x = to_q(a);
  QPoly y = to_q(b);
  trim(x);
  trim(y);
  while (!y.empty()) {
    QPoly r = q_remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return {};
  return from_q(x);
}

IntPolynomial squarefree_part(const IntPolynomial& p) {
  if (p.degree() <= 0) return primitive_part(p);
  const IntPolynomial g = gcd(p, derivative(p));
  if (g.degree() <= 0) return primitive_part(p);
  // Exact division over ℚ, then back to a primitive integer polynomial.
  QPoly num = to_q(p);
  const QPoly den = to_q(g);
  const std::size_t dd = den.size() - 1;
  QPoly quot(num.size() - dd, Rational(0));
  for (std::size_t k = num.size() - dd; k-- > 0;) {
    const Rational f = num[k + dd] / den.back();
    quot[k] = f;
    for (std::size_t i = 0; i <= dd; ++i) num[k + i] -= f * den[i];
  }
  return from_q(quot);
}

unsigned long euler_phi(unsigned long m) {
  unsigned long result = m;
  unsigned long n = m;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

const IntPolynomial& cyclotomic(unsigned long m) {
  static std::mutex mutex;
  static std::map<unsigned long, IntPolynomial> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "cyclotomic index must be positive");
  std::vector<BigInt> c(m + 1, BigInt(0));
  c[0] = -1;
  c[m] = 1;
  IntPolynomial poly(std::move(c));
  for (unsigned long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto q = divide_exact(poly, cyclotomic(d));
    if (!q) throw Error(ErrorKind::InternalConsistency, "cyclotomic recursion failed");
    poly = std::move(*q);
  }
  std::lock_guard lock(mutex);
  return cache.emplace(m, std::move(poly)).first->second;
}

CyclotomicSplit cyclotomic_split(const IntPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "cyclotomic split of the zero polynomial");
  CyclotomicSplit out;
  IntPolynomial rest = p;
  const int deg = p.degree();
  // φ(m) >= sqrt(m/2), so m <= 2·deg² covers every candidate.
  const unsigned long limit = 2ul * static_cast<unsigned long>(deg) * static_cast<unsigned long>(deg) + 2ul;
  for (unsigned long m = 1; m <= limit && rest.degree() > 0; ++m) {
    if (euler_phi(m) > static_cast<unsigned long>(rest.degree())) continue;
    int mult = 0;
    while (rest.degree() >= static_cast<int>(euler_phi(m))) {
      auto q = divide_exact(rest, cyclotomic(m));
      if (!q) break;
      rest = std::move(*q);
      ++mult;
    }
    if (mult > 0) out.factors.push_back({m, mult});
  }
  out.remainder = std::move(rest);
  return out;
}

IntPolynomial fold_self_reciprocal(const IntPolynomial& g) {
  const int d = g.degree();
  if (d < 0 || d % 2 != 0) throw Error(ErrorKind::InvalidArgument, "fold needs an even-degree polynomial");
  if (reciprocal(g) != g) throw Error(ErrorKind::InvalidArgument, "fold needs a self-reciprocal polynomial");
  const int m = d / 2;
  // D_k(x) = z^k + z^{-k} in terms of x = z + 1/z: D_0 = 2, D_1 = x, D_k = x D_{k-1} - D_{k-2}.
  std::vector<IntPolynomial> dk;
  dk.emplace_back(std::vector<BigInt>{BigInt(2)});
  if (m >= 1) dk.emplace_back(std::vector<BigInt>{BigInt(0), BigInt(1)});
  const IntPolynomial x(std::vector<BigInt>{BigInt(0), BigInt(1)});
  for (int k = 2; k <= m; ++k) {
    IntPolynomial next = x * dk[static_cast<std::size_t>(k - 1)];
    auto c = next.coeffs;
    const auto& prev = dk[static_cast<std::size_t>(k - 2)].coeffs;
    if (c.size() < prev.size()) c.resize(prev.size(), BigInt(0));
    for (std::size_t i = 0; i < prev.size(); ++i) c[i] -= prev[i];
    dk.emplace_back(std::move(c));
  }
  std::vector<BigInt> h(static_cast<std::size_t>(m + 1), BigInt(0));
  h[0] = g.coeffs[static_cast<std::size_t>(m)];
  for (int k = 1; k <= m; ++k) {
    const BigInt& gk = g.coeffs[static_cast<std::size_t>(m + k)];
    const auto& dc = dk[static_cast<std::size_t>(k)].coeffs;
    for (std::size_t i = 0; i < dc.size(); ++i) h[i] += gk * dc[i];
  }
  return IntPolynomial(std::move(h));
}

std::vector<RootInterval> isolate_real_roots(const IntPolynomial& p, const Rational& lo, const Rational& hi) {
  if (p.degree() <= 0) return {};
  const auto seq = sturm_sequence(p);
  // Roots in (a, b] = V(a) - V(b).
  std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
  std::vector<RootInterval> found;
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const int count = sign_variations(seq, a) - sign_variations(seq, b);
    const bool root_at_b = sign_at(p, b) == 0;
    if (root_at_b && b == hi) {
      // The outer interval is open at hi: split until hi is alone.
      if (count <= 1) continue;
    } else if (count == 0) {
      continue;
    } else if (count == 1) {
      found.push_back(root_at_b ? RootInterval{b, b} : RootInterval{a, b});
      continue;
    }
    const Rational mid = (a + b) / 2;
    stack.push_back({mid, b});
    stack.push_back({a, mid});
  }
  std::sort(found.begin(), found.end(), [](const RootInterval& x, const RootInterval& y) { return x.hi < y.hi; });
  return found;
}

RootInterval refine_root(const IntPolynomial& p, RootInterval iv, const Rational& width) {
  if (iv.lo == iv.hi) return iv;
  // The root is strictly inside (lo, hi) and simple, so p has sign s_hi on (root, hi].
  const int s_hi = sign_at(p, iv.hi);
  while (iv.hi - iv.lo > width) {
    const Rational mid = (iv.lo + iv.hi) / 2;
    const int s_mid = sign_at(p, mid);
    if (s_mid == 0) return {mid, mid};
    if (s_mid == s_hi) {
      iv.hi = mid;
    } else {
      iv.lo = mid;
    }
  }
  return iv;
}

}  // namespace speclab
