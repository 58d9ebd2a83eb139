#include "speclab/zeros.hpp"

#include "speclab/error.hpp"
#include "speclab/fourier.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace speclab {

namespace {

constexpr unsigned kMaxBits = 1024;

void trim(std::vector<int>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Frequency combine(const Frequency& a, const Frequency& b, int sign) {
  Frequency out;
  out.rational = sign > 0 ? a.rational + b.rational : a.rational - b.rational;
  out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] += sign * b.coeffs[i];
  trim(out.coeffs);
  return out;
}

unsigned bits_for(const BigInt& q, double eps) {
  const double qd = q.convert_to<double>();
  const double need = std::log2(std::max(qd, 1.0) / eps) + 8.0;
  return std::max(64u, static_cast<unsigned>(std::ceil(need)));
}

/// Enclosure of α = q·acos(x/2)/(2π) where x is the root of `h` isolated by `iv`.
Enclosure angle_enclosure(const IntPolynomial& h, const RootInterval& iv, const BigInt& q, unsigned bits) {
  const RootInterval fine = refine_root(h, iv, Rational(BigInt(1), BigInt(1) << (bits + 4)));
  PrecisionGuard guard(bits + 32);
  const BigFloat two_pi = 2 * boost::math::constants::pi<BigFloat>();
  const BigFloat qf(q);
  // acos is decreasing: the upper end of x gives the lower end of the angle.
  const BigFloat lo = qf * acos(to_bigfloat(fine.hi) / 2) / two_pi;
  const BigFloat hi = qf * acos(to_bigfloat(fine.lo) / 2) / two_pi;
  Enclosure e;
  e.midpoint = (lo + hi) / 2;
  const BigFloat pad = qf * pow(BigFloat(2), -static_cast<int>(bits + 16));
  e.radius = static_cast<double>(((hi - lo) / 2 + pad).convert_to<double>());
  e.radius = std::nextafter(e.radius, 1.0);
  e.tag = EnclosureTag::AlgebraicAngle;
  return e;
}

struct UnitCircleData {
  IntPolynomial folded;
  std::vector<RootInterval> roots;  ///< ordered by ascending angle (descending x)
};

UnitCircleData unit_circle_data(const IntPolynomial& remainder) {
  UnitCircleData out;
  if (remainder.degree() <= 0) return out;
  const IntPolynomial sf = squarefree_part(remainder);
  const IntPolynomial g = primitive_part(gcd(sf, reciprocal(sf)));
  if (g.degree() <= 0) return out;
  if (g.degree() % 2 != 0 || reciprocal(g) != g) {
    throw Error(ErrorKind::InternalConsistency, "unit-circle factor is not self-reciprocal of even degree");
  }
  out.folded = fold_self_reciprocal(g);
  out.roots = isolate_real_roots(out.folded, Rational(-2), Rational(2));
  std::reverse(out.roots.begin(), out.roots.end());
  return out;
}

bool overlaps_mod(const BigFloat& x, double xr, const Enclosure& f, const BigFloat& q) {
  BigFloat d = abs(x - f.midpoint);
  d = d - q * floor(d / q);
  if (q - d < d) d = q - d;
  const double slack = xr + f.radius + 1e-300;
  return d.convert_to<double>() <= slack;
}

}  // namespace

Frequency Frequency::basis(std::size_t r, int coefficient) {
  Frequency f;
  f.coeffs.assign(r + 1, 0);
  f.coeffs[r] = coefficient;
  trim(f.coeffs);
  return f;
}

Frequency operator+(const Frequency& a, const Frequency& b) { return combine(a, b, +1); }
Frequency operator-(const Frequency& a, const Frequency& b) { return combine(a, b, -1); }
Frequency operator-(const Frequency& a) { return combine(Frequency{}, a, -1); }

const char* to_string(ZeroVerdict v) {
  switch (v) {
    case ZeroVerdict::Yes: return "yes";
    case ZeroVerdict::No: return "no";
    case ZeroVerdict::Undecided: return "undecided";
  }
  return "undecided";
}

IntPolynomial unit_circle_polynomial(const IntervalSet& omega) {
  const auto& iv = omega.intervals();
  const Rational q(omega.common_denominator());
  std::vector<BigInt> lo_exp, hi_exp;
  for (const auto& i : iv) {
    lo_exp.push_back(numerator_of(i.lo * q));
    hi_exp.push_back(numerator_of(i.hi * q));
  }
  const BigInt shift = lo_exp.front();  // smallest exponent
  const auto degree = to_ll(hi_exp.back() - shift);
  std::vector<BigInt> c(static_cast<std::size_t>(degree + 1), BigInt(0));
  for (std::size_t j = 0; j < iv.size(); ++j) {
    c[static_cast<std::size_t>(to_ll(lo_exp[j] - shift))] += 1;
    c[static_cast<std::size_t>(to_ll(hi_exp[j] - shift))] -= 1;
  }
  return IntPolynomial(std::move(c));
}

std::vector<Enclosure> unit_circle_roots(const IntPolynomial& remainder, const BigInt& q, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  const auto data = unit_circle_data(remainder);
  const unsigned bits = bits_for(q, eps);
  std::vector<Enclosure> out;
  PrecisionGuard guard(bits + 32);
  for (const auto& iv : data.roots) {
    Enclosure a = angle_enclosure(data.folded, iv, q, bits);
    Enclosure b = a;
    b.midpoint = BigFloat(q) - a.midpoint;
    out.push_back(std::move(a));
    out.push_back(std::move(b));
  }
  for (const auto& e : out) {
    if (!(e.radius <= eps)) throw Error(ErrorKind::IllConditioned, "could not reach the requested radius");
  }
  std::sort(out.begin(), out.end(), [](const Enclosure& x, const Enclosure& y) { return x.midpoint < y.midpoint; });
  return out;
}

ZeroSet ZeroSet::build(const IntervalSet& omega, double bound, unsigned bits, double cert_tol) {
  if (!(cert_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "certification tolerance must be positive");
  ZeroSet z;
  z.omega_ = omega;
  z.bits_ = bits;
  z.mode_ = omega.mode();

  if (!omega.exact()) {
    if (!(bound > 0.0)) throw Error(ErrorKind::InvalidArgument, "float-mode zero search needs B > 0");
    const double step = std::min(1e-3, 1.0 / (50.0 * omega.diameter_approx()));
    const auto count = static_cast<long>(std::ceil(bound / step));
    const TransformEvaluator ft(omega);
    double prev2 = ft.power(0.0), prev1 = ft.power(step);
    std::vector<double> found;
    for (long i = 2; i <= count + 1; ++i) {
      const double x = static_cast<double>(i) * step;
      const double cur = ft.power(x);
      if (prev1 <= prev2 && prev1 <= cur && prev1 < 1e-4) {
        // Gauss-Newton on |χ̂|² from the grid minimum.
        double xi = static_cast<double>(i - 1) * step;
        for (int it = 0; it < 60; ++it) {
          const auto f = ft_indicator(omega, xi);
          const auto df = ft_indicator_derivative(omega, xi);
          const double denom = std::norm(df);
          if (denom == 0.0) break;
          const double delta = std::real(std::conj(df) * f) / denom;
          xi -= delta;
          if (std::abs(delta) < 1e-16 * std::max(1.0, std::abs(xi))) break;
        }
        if (xi > 0.0 && xi <= bound && std::abs(ft_indicator(omega, xi)) <= cert_tol) {
          if (found.empty() || std::abs(found.back() - xi) > 10.0 * step) found.push_back(xi);
        }
      }
      prev2 = prev1;
      prev1 = cur;
    }
    PrecisionGuard guard(bits);
    for (double xi : found) {
      Enclosure e;
      e.midpoint = BigFloat(xi);
      const double slope = std::abs(ft_indicator_derivative(omega, xi));
      const double resid = std::abs(ft_indicator(omega, xi));
      e.radius = std::max(slope > 0.0 ? 4.0 * resid / slope : 1e-12, 4e-16 * xi);
      e.tag = EnclosureTag::Float;
      z.fundamental_.push_back(std::move(e));
    }
    return z;
  }

  z.q_ = omega.common_denominator();
  z.polynomial_ = unit_circle_polynomial(omega);
  const auto split = cyclotomic_split(z.polynomial_);
  for (const auto& f : split.factors) z.cyclotomic_.push_back(f.index);
  const auto data = unit_circle_data(split.remainder);
  z.folded_ = data.folded;
  z.angle_roots_ = data.roots;

  PrecisionGuard guard(bits + 32);
  for (const auto& iv : z.angle_roots_) z.basis_.push_back(angle_enclosure(z.folded_, iv, z.q_, bits));

  const Rational q(z.q_);
  for (unsigned long m : z.cyclotomic_) {
    for (unsigned long j = 1; j <= m; ++j) {
      if (std::gcd(j, m) != 1) continue;
      z.fundamental_.push_back(z.enclose(Frequency(q * Rational(BigInt(j), BigInt(m))), bits));
    }
  }
  for (std::size_t r = 0; r < z.basis_.size(); ++r) {
    z.fundamental_.push_back(z.enclose(Frequency::basis(r), bits));
    z.fundamental_.push_back(z.enclose(Frequency(q) - Frequency::basis(r), bits));
  }
  std::sort(z.fundamental_.begin(), z.fundamental_.end(),
            [](const Enclosure& x, const Enclosure& y) { return x.midpoint < y.midpoint; });

  for (const auto& e : z.fundamental_) {
    const double v = std::abs(ft_indicator(omega, e.mid()));
    if (!(v <= cert_tol)) {
      throw Error(ErrorKind::IllConditioned, "zero candidate near " + std::to_string(e.mid()) + " has |ft| = " +
                                                  std::to_string(v));
    }
  }
  return z;
}

Enclosure ZeroSet::enclose(const Frequency& x, unsigned bits) const {
  PrecisionGuard guard(bits + 32);
  Enclosure e;
  e.exact = x;
  e.midpoint = to_bigfloat(x.rational);
  e.radius = 0.0;
  e.tag = x.is_rational() ? EnclosureTag::Rational : EnclosureTag::AlgebraicAngle;
  for (std::size_t r = 0; r < x.coeffs.size(); ++r) {
    if (x.coeffs[r] == 0) continue;
    if (r >= angle_roots_.size()) throw Error(ErrorKind::InvalidArgument, "frequency refers to an unknown basis zero");
    const Enclosure a = bits <= bits_ && r < basis_.size() ? basis_[r] : angle_enclosure(folded_, angle_roots_[r], q_, bits);
    e.midpoint += x.coeffs[r] * a.midpoint;
    e.radius += std::abs(x.coeffs[r]) * a.radius;
  }
  if (e.radius > 0.0) e.radius = std::nextafter(e.radius, 1.0);
  return e;
}

Enclosure ZeroSet::refine(const Enclosure& e, double eps) const {
  if (!e.exact) {
    if (e.radius <= eps) return e;
    throw Error(ErrorKind::IllConditioned, "a float enclosure cannot be refined");
  }
  std::size_t terms = 1;
  for (int c : e.exact->coeffs) terms += static_cast<std::size_t>(std::abs(c));
  return enclose(*e.exact, bits_for(q_ * static_cast<long>(terms), eps));
}

std::vector<Enclosure> ZeroSet::zeros_up_to(double bound) const {
  std::vector<Enclosure> out;
  if (mode_ == Mode::Float) {
    for (const auto& e : fundamental_) {
      if (e.mid() <= bound) out.push_back(e);
    }
    return out;
  }
  const double qd = q_.convert_to<double>();
  for (long k = 0; static_cast<double>(k) * qd < bound; ++k) {
    for (const auto& f : fundamental_) {
      Enclosure e = enclose(*f.exact + Frequency(Rational(q_ * k)), bits_);
      if (e.mid() <= bound) out.push_back(std::move(e));
    }
  }
  return out;
}

const Enclosure& ZeroSet::smallest() const {
  if (fundamental_.empty()) throw Error(ErrorKind::InternalConsistency, "no positive zero found");
  return fundamental_.front();
}

ZeroVerdict ZeroSet::contains(const Frequency& x) const {
  if (x.is_zero()) return ZeroVerdict::No;
  if (mode_ == Mode::Float) {
    if (!x.is_rational()) return ZeroVerdict::Undecided;
    PrecisionGuard guard(bits_);
    Enclosure e;
    e.midpoint = abs(to_bigfloat(x.rational));
    e.tag = EnclosureTag::Rational;
    return numeric_contains(e);
  }
  if (x.is_rational()) {
    // e^{-2πix/q} is a primitive v-th root of unity, v = denominator(x/q).
    const BigInt v = denominator_of(x.rational / Rational(q_));
    for (unsigned long m : cyclotomic_) {
      if (v == m) return ZeroVerdict::Yes;
    }
    return ZeroVerdict::No;
  }
  int nonzero = 0, weight = 0;
  for (int c : x.coeffs) {
    if (c != 0) ++nonzero;
    weight += std::abs(c);
  }
  if (nonzero == 1 && weight == 1 && is_integer(x.rational / Rational(q_))) return ZeroVerdict::Yes;
  for (unsigned bits = bits_; bits <= kMaxBits; bits *= 2) {
    Enclosure e = enclose(x, bits);
    PrecisionGuard guard(bits + 32);
    const BigFloat qf(q_);
    bool any = false;
    for (const auto& f : fundamental_) {
      const Enclosure fr = bits == bits_ ? f : enclose(*f.exact, bits);
      if (overlaps_mod(e.midpoint, e.radius, fr, qf)) {
        any = true;
        break;
      }
    }
    if (!any) return ZeroVerdict::No;
  }
  return ZeroVerdict::Undecided;
}

ZeroVerdict ZeroSet::contains(const Enclosure& x) const {
  if (x.exact) return contains(*x.exact);
  return numeric_contains(x);
}

ZeroVerdict ZeroSet::numeric_contains(const Enclosure& x) const {
  PrecisionGuard guard(bits_ + 32);
  const BigFloat v = abs(x.midpoint);
  if (v + x.radius <= 0) return ZeroVerdict::No;
  if (mode_ == Mode::Float) {
    double bound = 0.0;
    for (const auto& f : fundamental_) {
      bound = std::max(bound, f.upper());
      if (abs(v - f.midpoint).convert_to<double>() <= x.radius + f.radius) return ZeroVerdict::Yes;
    }
    // Beyond the scanned range nothing is known.
    return v.convert_to<double>() - x.radius <= bound ? ZeroVerdict::No : ZeroVerdict::Undecided;
  }
  const BigFloat qf(q_);
  for (const auto& f : fundamental_) {
    if (overlaps_mod(v, x.radius, f, qf)) return ZeroVerdict::Undecided;
  }
  return ZeroVerdict::No;
}

std::string ZeroSet::describe(const Frequency& x) const {
  std::ostringstream os;
  if (x.is_rational()) return to_string(x.rational);
  bool first = true;
  if (x.rational != 0) {
    os << to_string(x.rational);
    first = false;
  }
  for (std::size_t r = 0; r < x.coeffs.size(); ++r) {
    const int c = x.coeffs[r];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    if (std::abs(c) != 1) os << std::abs(c) << "*";
    os << "a" << r;
    first = false;
  }
  return os.str();
}

}  // namespace speclab
