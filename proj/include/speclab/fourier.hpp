#pragma once

#include "speclab/domain.hpp"
#include "speclab/rational.hpp"

#include <complex>
#include <vector>

namespace speclab {

/// Transform value carried at arbitrary precision.
struct BigComplex {
  BigFloat re;
  BigFloat im;
};

/// χ̂_Ω(ξ) = ∫_Ω e^{-2πiξx} dx, evaluated per interval as
/// w·sinc(ξw)·e^{-2πiξc} (c = centre, w = width). χ̂_Ω(0) is the measure.
std::complex<double> ft_indicator(const IntervalSet& omega, double xi);

/// Same transform at `bits` of working precision. The Rational overload
/// reduces the phases exactly before any rounding.
BigComplex ft_indicator(const IntervalSet& omega, const BigFloat& xi, unsigned bits);
BigComplex ft_indicator(const IntervalSet& omega, const Rational& xi, unsigned bits);

/// d/dξ χ̂_Ω(ξ).
std::complex<double> ft_indicator_derivative(const IntervalSet& omega, double xi);

/// |χ̂_Ω(ξ)|².
double power_spectrum(const IntervalSet& omega, double xi);

/// χ̂_Ω in double precision with the per-interval terms prepared once; for
/// hot loops.
class TransformEvaluator {
public:
  explicit TransformEvaluator(const IntervalSet& omega);
  std::complex<double> operator()(double xi) const;
  double power(double xi) const { return std::norm((*this)(xi)); }

private:
  struct Term {
    double centre_num, centre_den, width_num, width_den;
  };
  std::vector<Term> terms_;
  double measure_ = 0.0;
};

/// M(t) = min(1, C/t²) with C = n²/π² dominates |χ̂_Ω|², because each of the
/// n intervals contributes at most 2/(2π|ξ|) to |χ̂_Ω(ξ)|.
struct DecayMajorant {
  double C = 0.0;

  double operator()(double t) const noexcept;
  /// ∫_h^∞ M(t) dt.
  double tail_integral(double h) const noexcept;
};

DecayMajorant decay_majorant(const IntervalSet& omega);

/// Upper bound on ∫_{|ξ|>R} |χ̂_Ω|² dξ, capped at 1. Throws NonpositiveRadius.
double tail_bound(const IntervalSet& omega, double radius);

/// ∫_{-R}^{R} |χ̂_Ω|² dξ by adaptive Simpson on unit panels.
double power_spectrum_integral(const IntervalSet& omega, double radius, double tol = 1e-8);

/// Lipschitz constant of χ̂_Ω: 2π·max|x| over Ω.
double ft_lipschitz(const IntervalSet& omega);

}  // namespace speclab
