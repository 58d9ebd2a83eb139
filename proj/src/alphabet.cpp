#include "speclab/alphabet.hpp"

#include "speclab/error.hpp"
#include "speclab/fourier.hpp"

#include <cmath>

namespace speclab {

Enclosure min_gap(const ZeroSet& zeros) { return zeros.smallest(); }

double gap_bound_predicate(double C, double delta, double h) {
  return 2.0 * (C / (h * h) + C / (delta * h));
}

double max_gap_bound(const IntervalSet& omega, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "minimal gap must be positive");
  const double C = decay_majorant(omega).C;
  double lo = std::sqrt(C);
  double hi = lo;
  if (gap_bound_predicate(C, delta, lo) >= 1.0) {
    hi = std::max(1.0, 2.0 * lo);
    while (gap_bound_predicate(C, delta, hi) >= 1.0) {
      lo = hi;
      hi *= 2.0;
    }
    while ((hi - lo) > 1e-6 * hi) {
      const double mid = 0.5 * (lo + hi);
      if (gap_bound_predicate(C, delta, mid) < 1.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  return 2.0 * hi;
}

Alphabet build_alphabet(const ZeroSet& zeros) {
  Alphabet out;
  out.delta = min_gap(zeros);
  out.max_gap = max_gap_bound(zeros.omega(), out.delta.mid());
  if (out.delta.lower() > out.max_gap) {
    out.gap_obstruction = true;
    return out;
  }
  for (auto& e : zeros.zeros_up_to(out.max_gap + 1.0)) {
    bool inside = false;
    if (e.exact && e.exact->is_rational()) {
      inside = e.exact->rational <= Rational(out.max_gap);
    } else {
      // An ambiguous comparison keeps the symbol: a larger Σ stays valid.
      inside = e.lower() <= out.max_gap;
    }
    if (!inside) continue;
    if (e.exact) out.symbols.push_back(*e.exact);
    out.enclosures.push_back(std::move(e));
  }
  return out;
}

SpectralGapInfo spectral_gap(const IntervalSet& omega) {
  const PiecewiseLinear a = autocorrelation(omega);
  SpectralGapInfo info;
  for (std::size_t i = 0; i < a.breakpoints.size(); ++i) {
    if (a.breakpoints[i] > 0 && a.values[i] == 0) {
      info.a = a.breakpoints[i];
      break;
    }
  }
  if (info.a == 0) throw Error(ErrorKind::InternalConsistency, "autocorrelation has no positive zero");
  info.at_support_edge = info.a == omega.diameter();
  info.enclosure.midpoint = to_bigfloat(info.a);
  info.enclosure.tag = EnclosureTag::Rational;
  info.enclosure.exact = Frequency(info.a);
  return info;
}

}  // namespace speclab
