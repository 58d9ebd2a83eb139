#pragma once

#include "speclab/domain.hpp"
#include "speclab/zeros.hpp"

#include <optional>
#include <string>
#include <vector>

namespace speclab {

/// Λ = Tℤ + {ℓ_1, ..., ℓ_m}, offsets ascending in [0, T) with ℓ_1 = 0.
/// A spectrum needs m = T (density one).
struct PeriodicSpectrum {
  long period = 1;
  std::vector<Frequency> offsets;
};

/// Reduces offsets into [0, T), sorts them and translates so that the first
/// is 0. Spectra are translation invariant, so verdicts do not change.
PeriodicSpectrum normalize(const ZeroSet& zeros, long period, std::vector<Frequency> offsets);

/// Points of Λ inside [lo, hi], ascending.
std::vector<Frequency> expand(const ZeroSet& zeros, const PeriodicSpectrum& spectrum, double lo, double hi);
std::vector<double> approximate(const ZeroSet& zeros, const std::vector<Frequency>& points);

enum class CheckStatus { Pass, Fail, Inconclusive, NotApplicable };
enum class Overall { Confirmed, Refuted, Inconclusive };

const char* to_string(CheckStatus s);
const char* to_string(Overall o);

struct OrthogonalityResult {
  CheckStatus status = CheckStatus::Pass;
  /// Two points of Λ whose difference is not a zero of χ̂_Ω (or undecided).
  std::optional<std::pair<Frequency, Frequency>> witness;
  std::size_t differences_checked = 0;
};

struct PackingResult {
  double max_sum = 0.0;
  double grid_lo = 0.0;
  double grid_hi = 0.0;
  double grid_step = 0.0;
  std::size_t window_size = 0;
};

struct DualCheck {
  long k = 0;
  Rational autocorrelation;  ///< A(k/T)
  double offset_sum_abs = 0.0;  ///< |P(k/T)|, P(ξ) = Σ_j e^{2πiξℓ_j}
  double offset_sum_bound = 0.0;  ///< certified upper bound on |P(k/T)|
  bool passed = false;
  std::string via;  ///< "autocorrelation", "roots-of-unity" or "interval"
};

struct CompletenessResult {
  CheckStatus status = CheckStatus::NotApplicable;
  std::vector<DualCheck> checks;
  std::optional<long> witness_k;
  std::string reason;
};

struct VerificationReport {
  OrthogonalityResult orthogonality;
  PackingResult packing;
  CompletenessResult completeness;
  Overall overall = Overall::Inconclusive;
  std::string reason;
};

struct VerifyConfig {
  double dual_tol = 1e-10;
  double packing_tol = 1e-9;
  unsigned bits = kDefaultPrecisionBits;
  unsigned retry_bits = 1024;
  double packing_step = 1e-2;
  double packing_margin = 50.0;  ///< window reaches this far beyond the grid
};

/// Λ - Λ ⊆ {0} ∪ Z over a finite window (all pairs).
OrthogonalityResult check_orthogonality(const ZeroSet& zeros, const std::vector<Frequency>& window);

/// Λ - Λ ⊆ {0} ∪ Z for a periodic Λ. Z is q-periodic and kT runs through the
/// multiples of gcd(T, q) modulo q, so q/gcd(T, q) representatives per offset
/// pair decide every difference.
OrthogonalityResult check_orthogonality(const ZeroSet& zeros, const PeriodicSpectrum& spectrum);

/// max over the grid of Σ_λ |χ̂_Ω|²(x - λ); an orthogonal system keeps it <= 1.
PackingResult check_packing_sampled(const IntervalSet& omega, const std::vector<double>& window, double lo, double hi,
                                    double step);

/// Finite dual criterion for completeness of a periodic Λ.
///
/// With Λ = Tℤ + L the transform of δ_Λ is (1/T) Σ_k P̄(k/T) δ_{k/T}, and the
/// transform of |χ̂_Ω|² is the autocorrelation A. The tiling identity
/// |χ̂_Ω|² * δ_Λ = 1 therefore holds iff A(0)P(0)/T = 1 and
/// A(k/T)·P(k/T) = 0 for every k ≠ 0. A vanishes for |k| >= T·diameter, so
/// only finitely many k need checking.
CompletenessResult check_completeness(const ZeroSet& zeros, const PeriodicSpectrum& spectrum,
                                      const VerifyConfig& cfg = {});

struct TilingCheck {
  bool passed = false;
  long level = 0;
  /// Multiplicity profile of Ω mod 1/T: segment starts in [0, 1/T) with the
  /// multiplicity on [start, next start).
  std::vector<std::pair<Rational, long>> profile;
  std::optional<std::pair<Rational, long>> witness;  ///< point with wrong multiplicity
};

/// Whether Ω + T⁻¹ℤ covers the line exactly T times. Throws
/// IncommensurableGrid in float mode.
TilingCheck check_tiling_by_omega(const IntervalSet& omega, long level);

/// |χ̂_Ω(nT)| for n = 1..count at high precision.
std::vector<double> lattice_transform_values(const IntervalSet& omega, long period, int count,
                                             unsigned bits = kDefaultPrecisionBits);

struct ProfileRow {
  double x = 0.0;
  double sum = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct TilingProfile {
  std::vector<ProfileRow> rows;
  double band = 0.0;
  bool consistent = true;  ///< 1 lies in [lo, hi] on every row
};

/// Bound on Σ |χ̂_Ω|²(x - λ) over the λ farther than R from x, for any Λ with
/// minimal gap δ: 2[M(R) + (1/δ)∫_R^∞ M].
double tail_point_bound(const IntervalSet& omega, double radius, double min_gap);

/// Partial sums Σ_{|x-λ| <= R} |χ̂_Ω|²(x - λ) on the grid, with the band
/// [sum, sum + tail_point_bound]. Throws WindowTooSmall when a nonempty
/// window does not reach R beyond both ends of the grid.
TilingProfile numeric_tiling_profile(const IntervalSet& omega, const std::vector<double>& window, double x0,
                                     double x1, double step, double radius, double min_gap);

std::vector<double> grid_points(double x0, double x1, double step);

VerificationReport verify_periodic(const ZeroSet& zeros, const PeriodicSpectrum& spectrum,
                                   const VerifyConfig& cfg = {});
/// Finite windows get orthogonality and packing only; completeness is
/// reported as not applicable and the verdict is at best inconclusive.
VerificationReport verify_window(const ZeroSet& zeros, const std::vector<Frequency>& window,
                                 const VerifyConfig& cfg = {});

}  // namespace speclab
