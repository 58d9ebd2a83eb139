#pragma once

#include "speclab/domain.hpp"
#include "speclab/polynomial.hpp"
#include "speclab/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace speclab {

/// An element of ℚ + ℤα_0 + ℤα_1 + ..., where α_r are the irrational zeros
/// of χ̂_Ω in (0, q/2) (the basis of a ZeroSet). Spectrum points and their
/// differences live here, so that most membership questions are exact.
struct Frequency {
  Rational rational{0};
  std::vector<int> coeffs;  ///< coefficient of α_r; trailing zeros trimmed

  Frequency() = default;
  Frequency(Rational r) : rational(std::move(r)) {}  // NOLINT: implicit by intent
  static Frequency basis(std::size_t r, int coefficient = 1);

  bool is_rational() const noexcept { return coeffs.empty(); }
  bool is_zero() const noexcept { return coeffs.empty() && rational == 0; }

  friend Frequency operator+(const Frequency& a, const Frequency& b);
  friend Frequency operator-(const Frequency& a, const Frequency& b);
  friend Frequency operator-(const Frequency& a);
  friend bool operator==(const Frequency&, const Frequency&) = default;
};

enum class EnclosureTag { Rational, AlgebraicAngle, Float };

/// Certified ball [midpoint - radius, midpoint + radius] around a real value.
/// Rational and algebraic-angle enclosures carry the exact value and can be
/// refined to any radius.
struct Enclosure {
  BigFloat midpoint;
  double radius = 0.0;
  EnclosureTag tag = EnclosureTag::Float;
  std::optional<Frequency> exact;

  double mid() const { return midpoint.convert_to<double>(); }
  double lower() const { return mid() - radius; }
  double upper() const { return mid() + radius; }
};

enum class ZeroVerdict { Yes, No, Undecided };

const char* to_string(ZeroVerdict v);

/// P(z) = Σ_j (z^{q a_j} - z^{q b_j}) shifted to start at z^0, so that
/// χ̂_Ω(ξ) = 0 ⇔ P(e^{-2πiξ/q}) = 0 for ξ ≠ 0. Throws FloatModeUnsupported.
IntPolynomial unit_circle_polynomial(const IntervalSet& omega);

/// Unit-circle roots of a cyclotomic-free polynomial, as ξ ∈ (0, q] with
/// z = e^{-2πiξ/q}, each enclosed with radius <= eps. The roots are found
/// exactly: they are the roots of gcd(P, z^d P(1/z)), folded to real roots of
/// H(z + 1/z) in (-2, 2) and isolated by Sturm sequences.
std::vector<Enclosure> unit_circle_roots(const IntPolynomial& remainder, const BigInt& q, double eps);

/// Positive zero set of χ̂_Ω.
///
/// Exact mode: q-periodic, described by the zeros in (0, q]. Rational zeros
/// come from cyclotomic factors Φ_m of P (ξ = q·j/m, gcd(j, m) = 1); the rest
/// are the algebraic angles α_r and q - α_r.
///
/// Float mode: the zeros found in (0, B] by scanning |χ̂|² for local minima and
/// refining; such a set is reported as not certified.
class ZeroSet {
public:
  /// Every reported zero must satisfy |χ̂_Ω(midpoint)| <= cert_tol, or the
  /// build throws IllConditioned.
  static ZeroSet build(const IntervalSet& omega, double bound = 0.0, unsigned bits = kDefaultPrecisionBits,
                       double cert_tol = 1e-10);

  Mode mode() const noexcept { return mode_; }
  bool certified() const noexcept { return mode_ == Mode::ExactRational; }
  const BigInt& period() const noexcept { return q_; }
  const IntervalSet& omega() const noexcept { return omega_; }

  /// Fundamental zeros in (0, q] (exact) or all zeros found in (0, B] (float).
  const std::vector<Enclosure>& fundamental() const noexcept { return fundamental_; }
  const std::vector<unsigned long>& cyclotomic_indices() const noexcept { return cyclotomic_; }
  const IntPolynomial& polynomial() const noexcept { return polynomial_; }
  const IntPolynomial& folded() const noexcept { return folded_; }
  std::size_t basis_size() const noexcept { return angle_roots_.size(); }

  /// Encloses a Frequency with radius about q·2^-bits.
  Enclosure enclose(const Frequency& x, unsigned bits = kDefaultPrecisionBits) const;
  /// Re-encloses `e` with radius <= eps (exact enclosures only).
  Enclosure refine(const Enclosure& e, double eps) const;

  /// Positive zeros up to `bound`, ascending.
  std::vector<Enclosure> zeros_up_to(double bound) const;

  /// Smallest positive zero.
  const Enclosure& smallest() const;

  ZeroVerdict contains(const Frequency& x) const;
  ZeroVerdict contains(const Enclosure& x) const;

  /// Human-readable value: "p/q", or the rational part plus basis terms.
  std::string describe(const Frequency& x) const;

private:
  ZeroVerdict numeric_contains(const Enclosure& x) const;

  Mode mode_ = Mode::ExactRational;
  IntervalSet omega_;
  BigInt q_{1};
  IntPolynomial polynomial_;
  std::vector<unsigned long> cyclotomic_;
  IntPolynomial folded_;
  std::vector<RootInterval> angle_roots_;  ///< isolating intervals of H's roots, ascending x
  std::vector<Enclosure> basis_;           ///< α_r at the default precision
  unsigned bits_ = kDefaultPrecisionBits;
  std::vector<Enclosure> fundamental_;
};

}  // namespace speclab
