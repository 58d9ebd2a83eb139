#include "speclab/fourier.hpp"

#include "speclab/error.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace speclab {

namespace {

constexpr double kPi = std::numbers::pi;

/// A real number num/den with num and den integers held exactly in doubles
/// (den = 1 and arbitrary num in float mode).
struct ExactDouble {
  double num;
  double den;
};

bool fits_double(const BigInt& v) {
  return mp::abs(v) < (BigInt(1) << 52);
}

ExactDouble exact_double(const Rational& r) {
  const BigInt n = numerator_of(r);
  const BigInt d = denominator_of(r);
  if (fits_double(n) && fits_double(d)) return {n.convert_to<double>(), d.convert_to<double>()};
  return {to_double(r), 1.0};
}

/// (xi * v) reduced modulo `period`, in [-period/2, period/2). The product
/// xi*num is formed exactly as a double-double before reduction.
double reduced_product(double xi, ExactDouble v, double period) {
  const double p = xi * v.num;
  const double e = std::fma(xi, v.num, -p);
  const double span = period * v.den;
  double r = std::fmod(p, span);  // exact
  double t = (r + e) / v.den;
  t -= period * std::nearbyint(t / period);
  return t;
}

struct IntervalTerms {
  ExactDouble centre;
  ExactDouble width;
};

std::vector<IntervalTerms> interval_terms(const IntervalSet& omega) {
  std::vector<IntervalTerms> out;
  if (omega.exact()) {
    for (const auto& iv : omega.intervals()) {
      out.push_back({exact_double((iv.lo + iv.hi) / 2), exact_double(iv.hi - iv.lo)});
    }
  } else {
    for (const auto& [a, b] : omega.approx_intervals()) {
      out.push_back({{0.5 * (a + b), 1.0}, {b - a, 1.0}});
    }
  }
  return out;
}

/// sin(πξw)/(πξ).
double sinc_term(double xi, ExactDouble w) {
  const double wd = w.num / w.den;
  if (std::abs(xi) < 1e-8) {
    const double u = kPi * xi * wd;
    return wd * (1.0 - u * u / 6.0);
  }
  return std::sin(kPi * reduced_product(xi, w, 2.0)) / (kPi * xi);
}

}  // namespace

TransformEvaluator::TransformEvaluator(const IntervalSet& omega) {
  for (const auto& t : interval_terms(omega)) {
    terms_.push_back({t.centre.num, t.centre.den, t.width.num, t.width.den});
  }
  for (const auto& [a, b] : omega.approx_intervals()) measure_ += b - a;
}

std::complex<double> TransformEvaluator::operator()(double xi) const {
  if (xi == 0.0) return {measure_, 0.0};
  double re = 0.0, im = 0.0;
  for (const auto& t : terms_) {
    const double amp = sinc_term(xi, {t.width_num, t.width_den});
    const double phase = 2.0 * kPi * reduced_product(xi, {t.centre_num, t.centre_den}, 1.0);
    re += amp * std::cos(phase);
    im -= amp * std::sin(phase);
  }
  return {re, im};
}

std::complex<double> ft_indicator(const IntervalSet& omega, double xi) { return TransformEvaluator(omega)(xi); }

BigComplex ft_indicator(const IntervalSet& omega, const BigFloat& xi_in, unsigned bits) {
  PrecisionGuard guard(bits);
  const BigFloat xi(xi_in);
  BigComplex out{BigFloat(0), BigFloat(0)};
  if (xi == 0) {
    if (omega.exact()) {
      out.re = to_bigfloat(omega.measure());
    } else {
      for (const auto& [a, b] : omega.approx_intervals()) out.re += BigFloat(b) - BigFloat(a);
    }
    return out;
  }
  const BigFloat pi = boost::math::constants::pi<BigFloat>();
  auto add_term = [&](const BigFloat& c, const BigFloat& w) {
    const BigFloat amp = sin(pi * xi * w) / (pi * xi);
    BigFloat ph = xi * c;
    ph -= floor(ph);
    ph *= 2 * pi;
    out.re += amp * cos(ph);
    out.im -= amp * sin(ph);
  };
  if (omega.exact()) {
    for (const auto& iv : omega.intervals()) add_term(to_bigfloat((iv.lo + iv.hi) / 2), to_bigfloat(iv.hi - iv.lo));
  } else {
    for (const auto& [a, b] : omega.approx_intervals()) add_term((BigFloat(a) + BigFloat(b)) / 2, BigFloat(b) - BigFloat(a));
  }
  return out;
}

BigComplex ft_indicator(const IntervalSet& omega, const Rational& xi, unsigned bits) {
  if (!omega.exact()) {
    PrecisionGuard guard(bits);
    return ft_indicator(omega, to_bigfloat(xi), bits);
  }
  PrecisionGuard guard(bits);
  BigComplex out{BigFloat(0), BigFloat(0)};
  if (xi == 0) {
    out.re = to_bigfloat(omega.measure());
    return out;
  }
  const BigFloat pi = boost::math::constants::pi<BigFloat>();
  const BigFloat xif = to_bigfloat(xi);
  for (const auto& iv : omega.intervals()) {
    const Rational half_turns = mod(xi * (iv.hi - iv.lo), Rational(2));
    const BigFloat amp = sin(pi * to_bigfloat(half_turns)) / (pi * xif);
    const Rational turns = mod(xi * (iv.lo + iv.hi) / 2, Rational(1));
    const BigFloat ph = 2 * pi * to_bigfloat(turns);
    out.re += amp * cos(ph);
    out.im -= amp * sin(ph);
  }
  return out;
}

std::complex<double> ft_indicator_derivative(const IntervalSet& omega, double xi) {
  // d/dξ ∫ e^{-2πiξx} dx = ∫ -2πix e^{-2πiξx} dx, integrated per interval.
  using cd = std::complex<double>;
  cd total{0.0, 0.0};
  if (std::abs(xi) < 1e-8) {
    for (const auto& [a, b] : omega.approx_intervals()) total += cd(0.0, -kPi * (b * b - a * a));
    return total;
  }
  const cd s(0.0, -2.0 * kPi * xi);
  for (const auto& [a, b] : omega.approx_intervals()) {
    auto antideriv = [&](double x) { return std::exp(s * x) * (x / s - 1.0 / (s * s)); };
    total += antideriv(b) - antideriv(a);
  }
  return cd(0.0, -2.0 * kPi) * total;
}

double power_spectrum(const IntervalSet& omega, double xi) {
  return std::norm(ft_indicator(omega, xi));
}

double DecayMajorant::operator()(double t) const noexcept {
  const double t2 = t * t;
  if (t2 <= C) return 1.0;
  return C / t2;
}

double DecayMajorant::tail_integral(double h) const noexcept {
  const double root = std::sqrt(C);
  if (h >= root) return C / h;
  return (root - h) + root;
}

DecayMajorant decay_majorant(const IntervalSet& omega) {
  const double n = static_cast<double>(omega.size());
  return DecayMajorant{n * n / (kPi * kPi)};
}

double tail_bound(const IntervalSet& omega, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::NonpositiveRadius, "tail bound needs R > 0");
  const auto m = decay_majorant(omega);
  return std::min(1.0, 2.0 * m.tail_integral(radius));
}

namespace {

double simpson_recurse(const TransformEvaluator& ft, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = ft.power(lm);
  const double frm = ft.power(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_recurse(ft, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(ft, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double power_spectrum_integral(const IntervalSet& omega, double radius, double tol) {
  if (!(radius > 0.0)) throw Error(ErrorKind::NonpositiveRadius, "integration radius must be positive");
  // |χ̂|² is even; integrate [0, R] on unit panels and double.
  const auto panels = static_cast<long>(std::ceil(radius));
  const double panel_tol = tol / (2.0 * static_cast<double>(panels));
  const TransformEvaluator ft(omega);
  double sum = 0.0;
  for (long k = 0; k < panels; ++k) {
    const double a = static_cast<double>(k);
    const double b = std::min(radius, a + 1.0);
    const double m = 0.5 * (a + b);
    const double fa = ft.power(a);
    const double fm = ft.power(m);
    const double fb = ft.power(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    sum += simpson_recurse(ft, a, b, fa, fm, fb, whole, panel_tol, 40);
  }
  return 2.0 * sum;
}

double ft_lipschitz(const IntervalSet& omega) { return 2.0 * kPi * omega.max_abs_approx(); }

}  // namespace speclab
