#include "oracles.hpp"
#include "speclab/error.hpp"
#include "speclab/fourier.hpp"
#include "speclab/verify.hpp"

#include <doctest.h>

#include <random>

using namespace speclab;

namespace {

Rational R(const char* s) { return parse_rational(s); }

PeriodicSpectrum periodic(long T, std::initializer_list<const char*> offsets) {
  PeriodicSpectrum s;
  s.period = T;
  for (const char* o : offsets) s.offsets.emplace_back(R(o));
  return s;
}

std::vector<Frequency> integers(long lo, long hi) {
  std::vector<Frequency> out;
  for (long i = lo; i <= hi; ++i) out.emplace_back(Rational(i));
  return out;
}

// Multiplicity of Ω + (1/T)ℤ at x, counted directly.
long cover_count(const oracle::RawSet& set, const Rational& x, long T) {
  long count = 0;
  for (long k = -200; k <= 200; ++k) {
    const Rational y = x - Rational(k) / T;
    for (const auto& [a, b] : set)
      if (a <= y && y < b) ++count;
  }
  return count;
}

struct Known {
  oracle::RawSet set;
  PeriodicSpectrum spectrum;
};

std::vector<Known> known_spectra() {
  return {
      {oracle::raw({{"0", "1"}}), periodic(1, {"0"})},
      {oracle::raw({{"-1/2", "1/2"}}), periodic(1, {"1/3"})},
      {oracle::raw({{"0", "1/2"}, {"1", "3/2"}}), periodic(2, {"0", "1/2"})},
      {oracle::raw({{"0", "1/2"}, {"3/2", "2"}}), periodic(1, {"0"})},
      {oracle::raw({{"0", "1/3"}, {"1", "4/3"}, {"2", "7/3"}}), periodic(3, {"0", "1/3", "2/3"})},
  };
}

}  // namespace

TEST_CASE("orthogonality examples") {
  const auto unit = ZeroSet::build(oracle::make({{"0", "1"}}));
  CHECK(check_orthogonality(unit, periodic(1, {"0"})).status == CheckStatus::Pass);
  CHECK(check_orthogonality(unit, integers(-20, 20)).status == CheckStatus::Pass);

  const auto two = ZeroSet::build(oracle::make({{"0", "1/2"}, {"1", "3/2"}}));
  CHECK(check_orthogonality(two, periodic(2, {"0", "1/2"})).status == CheckStatus::Pass);

  const auto bad = check_orthogonality(two, periodic(1, {"0"}));
  REQUIRE(bad.status == CheckStatus::Fail);
  REQUIRE(bad.witness);
  const Frequency d = bad.witness->second - bad.witness->first;
  REQUIRE(d.is_rational());
  CHECK(abs(d.rational) == 1);
  CHECK(std::abs(oracle::transform(oracle::raw({{"0", "1/2"}, {"1", "3/2"}}), 1.0L)) > 0.1L);

  const auto win = check_orthogonality(two, integers(0, 5));
  CHECK(win.status == CheckStatus::Fail);
}

TEST_CASE("packing examples") {
  const auto unit = oracle::make({{"0", "1"}});
  std::vector<double> w;
  for (int i = 0; i <= 10; ++i) w.push_back(i);
  const auto p = check_packing_sampled(unit, w, 3.0, 7.0, 1e-3);
  CHECK(p.max_sum <= 1.0 + 1e-9);
  CHECK(p.max_sum > 0.9);

  CHECK(check_packing_sampled(unit, {0.0}, -3.0, 3.0, 1e-3).max_sum <= 1.0);
  CHECK(check_packing_sampled(unit, {0.0, 0.5}, 0.0, 0.5, 1e-3).max_sum > 1.0);
}

TEST_CASE("completeness examples") {
  const auto unit = ZeroSet::build(oracle::make({{"0", "1"}}));
  const auto c1 = check_completeness(unit, periodic(1, {"0"}));
  CHECK(c1.status == CheckStatus::Pass);
  REQUIRE(c1.checks.size() == 2);
  for (const auto& c : c1.checks) CHECK(c.autocorrelation == 0);

  const auto two = ZeroSet::build(oracle::make({{"0", "1/2"}, {"1", "3/2"}}));
  const auto c2 = check_completeness(two, periodic(2, {"0", "1/2"}));
  CHECK(c2.status == CheckStatus::Pass);
  REQUIRE(c2.checks.size() == 6);
  for (const auto& c : c2.checks) {
    CAPTURE(c.k);
    CHECK(c.passed);
    if (std::abs(c.k) == 1 || std::abs(c.k) == 3) CHECK(c.autocorrelation == 0);
    if (std::abs(c.k) == 2) {
      CHECK(c.autocorrelation == R("1/2"));
      CHECK(c.offset_sum_bound <= 1e-10);
    }
  }

  const auto c3 = check_completeness(unit, periodic(2, {"0", "3/10"}));
  CHECK(c3.status == CheckStatus::Fail);
  REQUIRE(c3.witness_k);
  CHECK(std::abs(*c3.witness_k) == 1);
  // recheck in isolation: A(1/2) = 1/2 and |1 + e^{0.3πi}| > 0
  CHECK(oracle::overlap(oracle::raw({{"0", "1"}}), R("1/2")) == R("1/2"));
  CHECK(std::abs(1.0L + std::polar(1.0L, oracle::kPi * 0.3L)) > 1.0L);
}

TEST_CASE("verify_periodic verdicts") {
  const auto two = ZeroSet::build(oracle::make({{"0", "1/2"}, {"1", "3/2"}}));
  const auto ok = verify_periodic(two, periodic(2, {"0", "1/2"}));
  CHECK(ok.overall == Overall::Confirmed);
  CHECK(ok.packing.max_sum <= 1.0 + 1e-9);
  CHECK(verify_periodic(two, periodic(1, {"0"})).overall == Overall::Refuted);

  const auto unit = ZeroSet::build(oracle::make({{"0", "1"}}));
  const auto perturbed = verify_periodic(unit, periodic(2, {"0", "3/10"}));
  CHECK(perturbed.overall == Overall::Refuted);
  CHECK(perturbed.completeness.status == CheckStatus::Fail);

  const auto sparse = check_completeness(unit, periodic(2, {"0"}));
  CHECK(sparse.status == CheckStatus::Fail);

  const auto win = verify_window(unit, integers(-10, 10));
  CHECK(win.overall == Overall::Inconclusive);
  CHECK(win.completeness.status == CheckStatus::NotApplicable);
}

TEST_CASE("tiling by omega") {
  CHECK(check_tiling_by_omega(oracle::make({{"0", "1"}}), 1).passed);
  CHECK(check_tiling_by_omega(oracle::make({{"0", "1"}}), 2).passed);
  CHECK(check_tiling_by_omega(oracle::make({{"0", "1/2"}, {"1", "3/2"}}), 2).passed);

  const auto set = oracle::raw({{"0", "1/3"}, {"1/2", "7/6"}});
  const auto t = check_tiling_by_omega(IntervalSet::from_rational(set), 2);
  CHECK_FALSE(t.passed);
  REQUIRE(t.witness);
  CHECK(cover_count(set, t.witness->first, 2) == t.witness->second);
  CHECK(t.witness->second != 2);
  // the profile agrees with the direct count everywhere, including near 0.4
  for (const auto& [start, mult] : t.profile) CHECK(cover_count(set, start, 2) == mult);
  CHECK(cover_count(set, R("2/5"), 2) == 1);

  CHECK_THROWS_AS(check_tiling_by_omega(IntervalSet::from_double({{0.0, 1.0}}), 1), Error);
}

TEST_CASE("numeric tiling profile") {
  const auto unit = oracle::make({{"0", "1"}});
  std::vector<double> w;
  for (int i = -50; i <= 50; ++i) w.push_back(i);
  const auto prof = numeric_tiling_profile(unit, w, -1.0, 1.0, 0.01, 40.0, 1.0);
  CHECK(prof.rows.size() == 201);
  CHECK(prof.consistent);
  for (const auto& r : prof.rows) {
    CHECK(r.sum <= 1.0 + 1e-12);
    CHECK(r.sum >= 1.0 - 6e-3);
    CHECK(r.hi >= 1.0);
  }

  const auto empty = numeric_tiling_profile(unit, {}, -1.0, 1.0, 0.1, 40.0, 1.0);
  for (const auto& r : empty.rows) CHECK(r.sum == 0.0);

  std::vector<double> holed;
  for (double x : w)
    if (x != 0.0) holed.push_back(x);
  const auto dip = numeric_tiling_profile(unit, holed, -0.5, 0.5, 0.01, 40.0, 1.0);
  CHECK_FALSE(dip.consistent);

  CHECK_THROWS_AS(numeric_tiling_profile(unit, w, -1.0, 1.0, 0.01, 100.0, 1.0), Error);
}

TEST_CASE("lattice transform values vanish for known spectra") {
  for (const auto& k : known_spectra()) {
    const auto omega = IntervalSet::from_rational(k.set);
    const auto v = lattice_transform_values(omega, k.spectrum.period, 20);
    REQUIRE(v.size() == 20);
    for (std::size_t n = 0; n < v.size(); ++n) {
      CHECK(v[n] <= 1e-10);
      CHECK(std::abs(oracle::transform(k.set, static_cast<long double>((n + 1) * k.spectrum.period))) <= 1e-12L);
    }
  }
}

TEST_CASE("property: known spectra are confirmed and satisfy the corollary") {
  for (const auto& k : known_spectra()) {
    const auto omega = IntervalSet::from_rational(k.set);
    const auto zeros = ZeroSet::build(omega);
    const auto rep = verify_periodic(zeros, k.spectrum);
    CAPTURE(omega.size());
    REQUIRE(rep.overall == Overall::Confirmed);
    CHECK(check_tiling_by_omega(omega, k.spectrum.period).passed);
  }
}

TEST_CASE("property: dual criterion agrees with the numeric profile") {
  for (const auto& k : known_spectra()) {
    const auto omega = IntervalSet::from_rational(k.set);
    const auto zeros = ZeroSet::build(omega);
    REQUIRE(check_completeness(zeros, k.spectrum).status == CheckStatus::Pass);
    const double T = static_cast<double>(k.spectrum.period);
    const double radius = 400.0;
    const auto window = approximate(zeros, expand(zeros, k.spectrum, -radius - 2 * T, 3 * T + radius));
    const auto prof = numeric_tiling_profile(omega, window, 0.0, T, 1e-2, radius, 1.0 / T);
    CHECK(prof.consistent);
    for (const auto& r : prof.rows) {
      CHECK(r.lo <= 1.0 + 1e-9);
      CHECK(r.hi >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("property: translation invariance of verdicts") {
  std::mt19937_64 rng(31);
  for (const auto& k : known_spectra()) {
    const auto zeros = ZeroSet::build(IntervalSet::from_rational(k.set));
    const auto base = verify_periodic(zeros, k.spectrum);
    for (int trial = 0; trial < 6; ++trial) {
      const Rational c = oracle::random_rational(rng, 5, 12);
      std::vector<Frequency> shifted;
      for (const auto& o : k.spectrum.offsets) shifted.push_back(o + Frequency(c));
      const auto moved = normalize(zeros, k.spectrum.period, shifted);
      const auto rep = verify_periodic(zeros, moved);
      CAPTURE(to_string(c));
      CHECK(rep.overall == base.overall);
      CHECK(rep.orthogonality.status == base.orthogonality.status);
      CHECK(rep.completeness.status == base.completeness.status);
    }
    // a refuted candidate stays refuted under translation
    auto broken = k.spectrum;
    broken.offsets.push_back(Frequency(R("1/7")));
    const auto b0 = verify_periodic(zeros, normalize(zeros, broken.period, broken.offsets));
    broken.offsets.front() = broken.offsets.front() + Frequency(R("2/9"));
    for (auto& o : broken.offsets) o = o + Frequency(R("5/11"));
    const auto b1 = verify_periodic(zeros, normalize(zeros, broken.period, broken.offsets));
    CHECK(b0.overall == Overall::Refuted);
    CHECK(b1.overall == Overall::Refuted);
  }
}

TEST_CASE("property: refutation witnesses recheck in isolation") {
  std::mt19937_64 rng(47);
  int refuted = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto set = oracle::random_set(rng, 3);
    const auto zeros = ZeroSet::build(IntervalSet::from_rational(set));
    const long T = 1 + static_cast<long>(rng() % 3);
    std::vector<Frequency> offsets;
    for (long j = 0; j < T; ++j) offsets.emplace_back(Rational(static_cast<long>(rng() % (4 * T)), 4));
    const auto spec = normalize(zeros, T, offsets);
    const auto o = check_orthogonality(zeros, spec);
    if (o.status == CheckStatus::Fail) {
      ++refuted;
      REQUIRE(o.witness);
      const Frequency d = o.witness->second - o.witness->first;
      REQUIRE(d.is_rational());
      CHECK(std::abs(oracle::transform(set, static_cast<long double>(to_double(d.rational)))) > 1e-9L);
    }
    const auto c = check_completeness(zeros, spec);
    if (c.status == CheckStatus::Fail && c.witness_k && spec.offsets.size() == static_cast<std::size_t>(T)) {
      ++refuted;
      const Rational xi = Rational(*c.witness_k) / T;
      CHECK(oracle::overlap(set, xi) != 0);
      oracle::cld p = 0;
      for (const auto& l : spec.offsets)
        p += std::polar(1.0L, 2 * oracle::kPi * static_cast<long double>(to_double(xi * l.rational)));
      CHECK(std::abs(p) > 1e-9L);
    }
  }
  CHECK(refuted > 10);
}
