#pragma once

#include "speclab/domain.hpp"
#include "speclab/zeros.hpp"

#include <vector>

namespace speclab {

/// The gap alphabet Σ = Z ∩ (0, Δ]: every gap between successive points of a
/// spectrum is one of these symbols.
struct Alphabet {
  std::vector<Frequency> symbols;     ///< ascending; exact values (exact mode)
  std::vector<Enclosure> enclosures;  ///< matching enclosures
  Enclosure delta;                    ///< smallest positive zero, = enclosures[0]
  double max_gap = 0.0;               ///< Δ
  /// Δ < δ: no gap can be both a zero and small enough, so Ω has no
  /// spectrum. Σ is then empty.
  bool gap_obstruction = false;

  std::size_t size() const noexcept { return enclosures.size(); }
};

/// Smallest positive zero of χ̂_Ω: a lower bound for every gap of a spectrum.
Enclosure min_gap(const ZeroSet& zeros);

/// 2(C/h² + C/(δh)).
double gap_bound_predicate(double C, double delta, double h);

/// Δ = 2h*, h* the least h >= √C with gap_bound_predicate < 1, located by
/// bisection to relative precision 1e-6 and rounded up.
///
/// If some x were at distance >= h from every point of a spectrum Λ with
/// minimal gap δ, the tiling identity would give
///   1 = Σ_λ |χ̂|²(x - λ) <= 2[M(h) + (1/δ)∫_h^∞ M] = 2(C/h² + C/(δh)),
/// so gaps of Λ are at most 2h whenever the right side is below 1. A result
/// below δ rules out every spectrum.
double max_gap_bound(const IntervalSet& omega, double delta);

Alphabet build_alphabet(const ZeroSet& zeros);

struct SpectralGapInfo {
  Rational a;                    ///< first positive zero of the autocorrelation
  bool at_support_edge = false;  ///< a equals the diameter
  Enclosure enclosure;
};

/// First positive zero of A = χ_Ω * χ_{-Ω}. A is piecewise linear and
/// nonnegative, so it can only vanish at a breakpoint. Throws
/// FloatModeUnsupported.
SpectralGapInfo spectral_gap(const IntervalSet& omega);

}  // namespace speclab
