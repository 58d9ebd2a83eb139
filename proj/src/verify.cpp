#include "speclab/verify.hpp"

#include "speclab/error.hpp"
#include "speclab/fourier.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace speclab {

namespace {

void require_exact(const ZeroSet& zeros) {
  if (!zeros.certified()) throw Error(ErrorKind::FloatModeUnsupported, "verification needs an exact-rational set");
}

double value_of(const ZeroSet& zeros, const Frequency& x) {
  if (x.is_rational()) return to_double(x.rational);
  return zeros.enclose(x).mid();
}

bool less_than(const ZeroSet& zeros, const Frequency& a, const Frequency& b) {
  if (a.is_rational() && b.is_rational()) return a.rational < b.rational;
  return zeros.enclose(a).midpoint < zeros.enclose(b).midpoint;
}

struct OffsetSum {
  double abs_mid = 0.0;
  double error = 0.0;
};

/// |Σ_j e^{2πiξℓ_j}| at ξ = k/T with a rigorous error term.
OffsetSum offset_sum(const ZeroSet& zeros, const PeriodicSpectrum& s, long k, unsigned bits) {
  PrecisionGuard guard(bits + 32);
  const BigFloat two_pi = 2 * boost::math::constants::pi<BigFloat>();
  const Rational xi(BigInt(k), BigInt(s.period));
  BigFloat re(0), im(0);
  double err = 0.0;
  for (const auto& l : s.offsets) {
    BigFloat turns;
    if (l.is_rational()) {
      turns = to_bigfloat(mod(xi * l.rational, Rational(1)));
    } else {
      const Enclosure e = zeros.enclose(l, bits);
      turns = to_bigfloat(xi) * e.midpoint;
      err += 2.0 * std::numbers::pi * std::abs(static_cast<double>(k)) / static_cast<double>(s.period) * e.radius;
    }
    re += cos(two_pi * turns);
    im += sin(two_pi * turns);
  }
  // A few ulps per term at the working precision.
  err += static_cast<double>(s.offsets.size()) * std::ldexp(16.0, -static_cast<int>(bits));
  return {sqrt(re * re + im * im).convert_to<double>(), err};
}

/// Exact test of Σ_j e^{2πiξℓ_j} = 0 for rational ξ and offsets: the phases are
/// powers of a primitive N-th root of unity ζ, and Σ ζ^{e_j} = 0 iff Φ_N
/// divides Σ z^{e_j}.
bool roots_of_unity_vanish(const PeriodicSpectrum& s, long k) {
  const Rational xi(BigInt(k), BigInt(s.period));
  std::vector<Rational> phases;
  BigInt n{1};
  for (const auto& l : s.offsets) {
    phases.push_back(mod(xi * l.rational, Rational(1)));
    n = lcm(n, denominator_of(phases.back()));
  }
  if (n == 1) return s.offsets.empty();
  std::vector<BigInt> c(static_cast<std::size_t>(to_ll(n)), BigInt(0));
  for (const auto& p : phases) c[static_cast<std::size_t>(to_ll(numerator_of(p * Rational(n))))] += 1;
  const IntPolynomial sum(std::move(c));
  if (sum.is_zero()) return true;
  return divide_exact(sum, cyclotomic(static_cast<unsigned long>(to_ll(n)))).has_value();
}

bool all_rational(const PeriodicSpectrum& s) {
  return std::all_of(s.offsets.begin(), s.offsets.end(), [](const Frequency& f) { return f.is_rational(); });
}

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "inconclusive";
}

const char* to_string(Overall o) {
  switch (o) {
    case Overall::Confirmed: return "spectrum-confirmed";
    case Overall::Refuted: return "refuted";
    case Overall::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PeriodicSpectrum normalize(const ZeroSet& zeros, long period, std::vector<Frequency> offsets) {
  if (period <= 0) throw Error(ErrorKind::InvalidArgument, "period must be a positive integer");
  const Rational T(period);
  for (auto& x : offsets) {
    if (x.is_rational()) {
      x.rational = mod(x.rational, T);
    } else {
      const double v = value_of(zeros, x);
      x = x - Frequency(T * Rational(static_cast<long>(std::floor(v / static_cast<double>(period)))));
    }
  }
  std::sort(offsets.begin(), offsets.end(), [&](const Frequency& a, const Frequency& b) { return less_than(zeros, a, b); });
  if (!offsets.empty()) {
    const Frequency base = offsets.front();
    for (auto& x : offsets) x = x - base;
  }
  return PeriodicSpectrum{period, std::move(offsets)};
}

std::vector<Frequency> expand(const ZeroSet& zeros, const PeriodicSpectrum& spectrum, double lo, double hi) {
  std::vector<std::pair<double, Frequency>> pts;
  const double T = static_cast<double>(spectrum.period);
  const auto n0 = static_cast<long>(std::floor(lo / T)) - 1;
  const auto n1 = static_cast<long>(std::ceil(hi / T)) + 1;
  std::vector<double> base;
  for (const auto& l : spectrum.offsets) base.push_back(value_of(zeros, l));
  for (long n = n0; n <= n1; ++n) {
    for (std::size_t j = 0; j < spectrum.offsets.size(); ++j) {
      const double v = base[j] + static_cast<double>(n) * T;
      if (v < lo || v > hi) continue;
      pts.emplace_back(v, spectrum.offsets[j] + Frequency(Rational(n * spectrum.period)));
    }
  }
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Frequency> out;
  out.reserve(pts.size());
  for (auto& p : pts) out.push_back(std::move(p.second));
  return out;
}

std::vector<double> approximate(const ZeroSet& zeros, const std::vector<Frequency>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(value_of(zeros, p));
  return out;
}

OrthogonalityResult check_orthogonality(const ZeroSet& zeros, const std::vector<Frequency>& window) {
  OrthogonalityResult r;
  std::optional<std::pair<Frequency, Frequency>> undecided;
  for (std::size_t i = 0; i < window.size(); ++i) {
    for (std::size_t j = i + 1; j < window.size(); ++j) {
      ++r.differences_checked;
      const auto v = zeros.contains(window[j] - window[i]);
      if (v == ZeroVerdict::No) {
        r.status = CheckStatus::Fail;
        r.witness = std::pair{window[i], window[j]};
        return r;
      }
      if (v == ZeroVerdict::Undecided && !undecided) undecided = std::pair{window[i], window[j]};
    }
  }
  if (undecided) {
    r.status = CheckStatus::Inconclusive;
    r.witness = undecided;
  }
  return r;
}

OrthogonalityResult check_orthogonality(const ZeroSet& zeros, const PeriodicSpectrum& spectrum) {
  require_exact(zeros);
  OrthogonalityResult r;
  const BigInt q = zeros.period();
  const BigInt g = gcd(q, BigInt(spectrum.period));
  const long classes = to_ll(q / g);
  std::optional<std::pair<Frequency, Frequency>> undecided;
  const auto& l = spectrum.offsets;
  for (std::size_t i = 0; i < l.size(); ++i) {
    for (std::size_t j = i; j < l.size(); ++j) {
      const long k0 = i == j ? 1 : 0;
      const long k1 = i == j ? classes : classes - 1;
      for (long k = k0; k <= k1; ++k) {
        ++r.differences_checked;
        const Frequency other = l[j] + Frequency(Rational(k * spectrum.period));
        const auto v = zeros.contains(other - l[i]);
        if (v == ZeroVerdict::No) {
          r.status = CheckStatus::Fail;
          r.witness = std::pair{l[i], other};
          return r;
        }
        if (v == ZeroVerdict::Undecided && !undecided) undecided = std::pair{l[i], other};
      }
    }
  }
  if (undecided) {
    r.status = CheckStatus::Inconclusive;
    r.witness = undecided;
  }
  return r;
}

std::vector<double> grid_points(double x0, double x1, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::InvalidArgument, "grid step must be positive");
  if (!(x1 >= x0)) throw Error(ErrorKind::InvalidArgument, "grid end must not precede its start");
  const auto n = static_cast<long>(std::floor((x1 - x0) / step + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) out.push_back(x0 + static_cast<double>(i) * step);
  return out;
}

PackingResult check_packing_sampled(const IntervalSet& omega, const std::vector<double>& window, double lo, double hi,
                                    double step) {
  PackingResult r;
  r.grid_lo = lo;
  r.grid_hi = hi;
  r.grid_step = step;
  r.window_size = window.size();
  const TransformEvaluator ft(omega);
  for (double x : grid_points(lo, hi, step)) {
    double sum = 0.0;
    for (double l : window) sum += ft.power(x - l);
    r.max_sum = std::max(r.max_sum, sum);
  }
  return r;
}

CompletenessResult check_completeness(const ZeroSet& zeros, const PeriodicSpectrum& spectrum, const VerifyConfig& cfg) {
  require_exact(zeros);
  CompletenessResult r;
  r.status = CheckStatus::Pass;
  const long T = spectrum.period;
  if (static_cast<long>(spectrum.offsets.size()) != T) {
    r.status = CheckStatus::Fail;
    r.witness_k = 0;
    r.reason = "density: " + std::to_string(spectrum.offsets.size()) + " offsets per period " + std::to_string(T) +
               ", need exactly T";
    return r;
  }
  const IntervalSet& omega = zeros.omega();
  const PiecewiseLinear a = autocorrelation(omega);
  const long kmax = to_ll(floor_of(omega.diameter() * Rational(T)));
  const bool exact_offsets = all_rational(spectrum);
  bool inconclusive = false;
  for (long m = 1; m <= kmax; ++m) {
    for (long k : {m, -m}) {
      DualCheck c;
      c.k = k;
      c.autocorrelation = evaluate(a, Rational(BigInt(k), BigInt(T)));
      OffsetSum s = offset_sum(zeros, spectrum, k, cfg.bits);
      c.offset_sum_abs = s.abs_mid;
      c.offset_sum_bound = s.abs_mid + s.error;
      if (c.autocorrelation == 0) {
        c.passed = true;
        c.via = "autocorrelation";
      } else if (exact_offsets) {
        c.passed = roots_of_unity_vanish(spectrum, k);
        c.via = "roots-of-unity";
        if (c.passed && !(c.offset_sum_bound <= cfg.dual_tol)) {
          throw Error(ErrorKind::InternalConsistency, "exact and interval offset sums disagree");
        }
      } else {
        c.via = "interval";
        if (c.offset_sum_bound > cfg.dual_tol && s.abs_mid - s.error <= cfg.dual_tol) {
          s = offset_sum(zeros, spectrum, k, cfg.retry_bits);
          c.offset_sum_abs = s.abs_mid;
          c.offset_sum_bound = s.abs_mid + s.error;
        }
        if (c.offset_sum_bound <= cfg.dual_tol) {
          c.passed = true;
        } else if (s.abs_mid - s.error <= cfg.dual_tol) {
          inconclusive = true;
        }
      }
      r.checks.push_back(c);
      if (!c.passed && c.via != "interval") {
        r.status = CheckStatus::Fail;
        if (!r.witness_k) r.witness_k = k;
      } else if (!c.passed && s.abs_mid - s.error > cfg.dual_tol) {
        r.status = CheckStatus::Fail;
        if (!r.witness_k) r.witness_k = k;
      }
    }
  }
  if (r.status == CheckStatus::Pass && inconclusive) {
    r.status = CheckStatus::Inconclusive;
    r.reason = "precision exhausted on an offset sum";
  }
  if (r.status == CheckStatus::Fail && r.reason.empty()) {
    r.reason = "A(k/T)·P(k/T) != 0 at k = " + std::to_string(*r.witness_k);
  }
  return r;
}

TilingCheck check_tiling_by_omega(const IntervalSet& omega, long level) {
  if (level <= 0) throw Error(ErrorKind::InvalidArgument, "tiling level must be a positive integer");
  if (!omega.exact()) throw Error(ErrorKind::IncommensurableGrid, "float-mode endpoints are not commensurable with 1/T");
  const Rational p(BigInt(1), BigInt(level));
  long base = 0;
  std::map<Rational, long> delta;
  delta[Rational(0)] += 0;
  delta[p] += 0;
  for (const auto& iv : omega.intervals()) {
    const Rational len = iv.hi - iv.lo;
    const BigInt full = floor_of(len / p);
    base += to_ll(full);
    const Rational rest = len - Rational(full) * p;
    if (rest == 0) continue;
    const Rational s = mod(iv.lo, p);
    const Rational e = s + rest;
    if (e <= p) {
      delta[s] += 1;
      delta[e] -= 1;
    } else {
      delta[s] += 1;
      delta[p] -= 1;
      delta[Rational(0)] += 1;
      delta[e - p] -= 1;
    }
  }
  TilingCheck out;
  out.level = level;
  out.passed = true;
  long running = base;
  for (auto it = delta.begin(); it != delta.end(); ++it) {
    running += it->second;
    const auto next = std::next(it);
    if (next == delta.end() || it->first >= p) break;
    if (next->first == it->first) continue;
    if (out.profile.empty() || out.profile.back().second != running) out.profile.emplace_back(it->first, running);
    if (running != level && !out.witness) {
      out.passed = false;
      out.witness = std::pair{(it->first + next->first) / 2, running};
    }
  }
  return out;
}

std::vector<double> lattice_transform_values(const IntervalSet& omega, long period, int count, unsigned bits) {
  std::vector<double> out;
  for (int n = 1; n <= count; ++n) {
    const BigComplex v = ft_indicator(omega, Rational(static_cast<long>(n) * period), bits);
    PrecisionGuard guard(bits);
    out.push_back(sqrt(v.re * v.re + v.im * v.im).convert_to<double>());
  }
  return out;
}

double tail_point_bound(const IntervalSet& omega, double radius, double min_gap) {
  if (!(radius > 0.0)) throw Error(ErrorKind::NonpositiveRadius, "profile radius must be positive");
  if (!(min_gap > 0.0)) throw Error(ErrorKind::InvalidArgument, "minimal gap must be positive");
  const DecayMajorant m = decay_majorant(omega);
  return 2.0 * (m(radius) + m.tail_integral(radius) / min_gap);
}

TilingProfile numeric_tiling_profile(const IntervalSet& omega, const std::vector<double>& window, double x0,
                                     double x1, double step, double radius, double min_gap) {
  const auto grid = grid_points(x0, x1, step);
  TilingProfile out;
  out.band = tail_point_bound(omega, radius, min_gap);
  const TransformEvaluator ft(omega);
  std::vector<double> w(window);
  std::sort(w.begin(), w.end());
  if (!w.empty() && (w.front() > x0 - radius || w.back() < x1 + radius)) {
    throw Error(ErrorKind::WindowTooSmall, "window must cover [x0 - R, x1 + R]");
  }
  for (double x : grid) {
    ProfileRow row;
    row.x = x;
    auto it = std::lower_bound(w.begin(), w.end(), x - radius);
    for (; it != w.end() && *it <= x + radius; ++it) row.sum += ft.power(x - *it);
    row.lo = row.sum;
    row.hi = row.sum + out.band;
    if (row.lo > 1.0 + 1e-9 || row.hi < 1.0 - 1e-9) out.consistent = false;
    out.rows.push_back(row);
  }
  return out;
}

VerificationReport verify_periodic(const ZeroSet& zeros, const PeriodicSpectrum& spectrum, const VerifyConfig& cfg) {
  require_exact(zeros);
  VerificationReport rep;
  rep.orthogonality = check_orthogonality(zeros, spectrum);
  const double T = static_cast<double>(spectrum.period);
  const auto window = approximate(zeros, expand(zeros, spectrum, -cfg.packing_margin, T + cfg.packing_margin));
  rep.packing = check_packing_sampled(zeros.omega(), window, 0.0, T, cfg.packing_step);
  rep.completeness = check_completeness(zeros, spectrum, cfg);

  const auto& o = rep.orthogonality;
  const auto& c = rep.completeness;
  if (o.status == CheckStatus::Fail) {
    rep.overall = Overall::Refuted;
    rep.reason = "orthogonality fails";
  } else if (c.status == CheckStatus::Fail) {
    rep.overall = Overall::Refuted;
    rep.reason = "completeness fails: " + c.reason;
  } else if (o.status == CheckStatus::Pass && c.status == CheckStatus::Pass) {
    rep.overall = Overall::Confirmed;
  } else {
    rep.overall = Overall::Inconclusive;
    rep.reason = o.status != CheckStatus::Pass ? "orthogonality undecided" : c.reason;
  }
  return rep;
}

VerificationReport verify_window(const ZeroSet& zeros, const std::vector<Frequency>& window, const VerifyConfig& cfg) {
  VerificationReport rep;
  rep.orthogonality = check_orthogonality(zeros, window);
  const auto pts = approximate(zeros, window);
  if (!pts.empty()) {
    const auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    rep.packing = check_packing_sampled(zeros.omega(), pts, *lo, *hi, cfg.packing_step);
  }
  rep.completeness.status = CheckStatus::NotApplicable;
  rep.completeness.reason = "completeness is decided for periodic candidates only";
  if (rep.orthogonality.status == CheckStatus::Fail) {
    rep.overall = Overall::Refuted;
    rep.reason = "orthogonality fails";
  } else if (rep.packing.max_sum > 1.0 + cfg.packing_tol) {
    rep.overall = Overall::Refuted;
    rep.reason = "packing sum exceeds 1";
  } else {
    rep.overall = Overall::Inconclusive;
    rep.reason = rep.completeness.reason;
  }
  return rep;
}

}  // namespace speclab
