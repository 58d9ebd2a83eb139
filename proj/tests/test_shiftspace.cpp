#include "speclab/error.hpp"
#include "speclab/shiftspace.hpp"

#include <doctest.h>

#include <random>

using namespace speclab;

namespace {

SymbolWord word(std::size_t k, std::vector<std::size_t> s) { return SymbolWord{k, std::move(s)}; }

SymbolWord repeat(std::size_t k, const std::vector<std::size_t>& block, std::size_t length) {
  SymbolWord w{k, {}};
  for (std::size_t m = 0; m < length; ++m) w.symbols.push_back(block[m % block.size()]);
  return w;
}

// Smallest p with word[m] == word[m + p] throughout, by brute force.
std::size_t least_period(const std::vector<std::size_t>& s) {
  for (std::size_t p = 1; p < s.size(); ++p) {
    bool ok = true;
    for (std::size_t m = 0; m + p < s.size() && ok; ++m) ok = s[m] == s[m + p];
    if (ok) return p;
  }
  return s.size();
}

}  // namespace

TEST_CASE("determination witness") {
  CHECK_FALSE(determination_witness({word(1, {0, 0, 0, 0})}, 1));

  const auto w = determination_witness({word(2, {0, 1, 0}), word(2, {0, 1, 1})}, 2);
  REQUIRE(w);
  CHECK(w->block == std::vector<std::size_t>{0, 1});
  CHECK(w->first_next != w->second_next);
  CHECK(w->first_sample != w->second_sample);

  CHECK_FALSE(determination_witness({word(2, {0, 1, 0, 1, 0})}, 1));
  CHECK_THROWS_AS(determination_witness({word(2, {0, 1})}, 0), Error);
}

TEST_CASE("minimal determining window") {
  CHECK(minimal_determining_window({word(1, {0, 0, 0, 0})}) == 1);
  CHECK(minimal_determining_window({word(2, {0, 1, 0}), word(2, {0, 1, 1})}) == 3);
  CHECK(minimal_determining_window({word(2, {0, 1, 0, 1, 0, 1})}) == 1);
  CHECK(minimal_determining_window({word(2, {0, 0, 1, 0, 0, 1, 0, 0})}) == 2);
  CHECK_THROWS_AS(minimal_determining_window({}), Error);
}

TEST_CASE("extract period") {
  CHECK(extract_period(repeat(1, {0}, 4), 1) == 1u);
  CHECK(extract_period(repeat(2, {0, 1}, 10), 2) == 2u);
  CHECK(extract_period(repeat(2, {0, 0, 1}, 12), 3) == 3u);
  CHECK_THROWS_AS(extract_period(repeat(2, {0, 1}, 5), 2), Error);
  CHECK_FALSE(extract_period(word(2, {0, 0, 1, 1, 1, 1}), 1));
}

TEST_CASE("pigeonhole bound and validation") {
  CHECK(pigeonhole_bound(2, 3) == 8);
  CHECK(pigeonhole_bound(1, 50) == 1);
  CHECK(pigeonhole_bound(10, 40) == SIZE_MAX);
  CHECK_THROWS_AS(validate(word(2, {0, 2})), Error);
  CHECK_NOTHROW(validate(word(3, {0, 2})));
}

TEST_CASE("property: extracted periods respect the pigeonhole bound") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t k = 1 + rng() % 3;
    const std::size_t w = 1 + rng() % 3;
    const std::size_t bound = pigeonhole_bound(k, w);
    const std::size_t p = 1 + rng() % bound;
    std::vector<std::size_t> block(p);
    for (auto& s : block) s = rng() % k;
    const auto word = repeat(k, block, bound + w + rng() % 8);
    const auto got = extract_period(word, w);
    CAPTURE(trial);
    if (w >= p) {
      REQUIRE(got);
      CHECK(*got == least_period(word.symbols));
      CHECK(p % *got == 0);
    }
    if (!got) continue;
    CHECK(*got <= bound);
    for (std::size_t m = 0; m + *got < word.symbols.size(); ++m) CHECK(word.symbols[m] == word.symbols[m + *got]);
    // a genuine period of the word is a multiple of the least one when the word is long enough
    const std::size_t least = least_period(word.symbols);
    if (word.symbols.size() >= *got + least) CHECK(*got % least == 0);
  }
}

TEST_CASE("property: a window that determines the samples keeps doing so when widened") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 2 + rng() % 2;
    std::vector<SymbolWord> samples(1 + rng() % 3);
    for (auto& s : samples) {
      s.k = k;
      s.symbols.resize(3 + rng() % 12);
      for (auto& x : s.symbols) x = rng() % k;
    }
    const std::size_t w = minimal_determining_window(samples);
    if (w > 1) CHECK(determination_witness(samples, w - 1));
    for (std::size_t v = w; v <= w + 4; ++v) CHECK_FALSE(determination_witness(samples, v));
  }
}
