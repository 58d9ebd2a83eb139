#include "speclab/shiftspace.hpp"

#include "speclab/error.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace speclab {

void validate(const SymbolWord& word) {
  if (word.k == 0) throw Error(ErrorKind::InvalidArgument, "alphabet size must be positive");
  for (std::size_t s : word.symbols) {
    if (s >= word.k) {
      throw Error(ErrorKind::InvalidArgument,
                  "symbol " + std::to_string(s) + " outside alphabet of size " + std::to_string(word.k));
    }
  }
}

std::optional<DeterminationWitness> determination_witness(const std::vector<SymbolWord>& samples, std::size_t w) {
  if (w == 0) throw Error(ErrorKind::InvalidArgument, "window size must be at least 1");
  struct Seen {
    std::size_t sample, position, next;
  };
  std::map<std::vector<std::size_t>, Seen> first;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    validate(samples[s]);
    const auto& sym = samples[s].symbols;
    for (std::size_t i = 0; i + w < sym.size(); ++i) {
      std::vector<std::size_t> block(sym.begin() + static_cast<long>(i), sym.begin() + static_cast<long>(i + w));
      const std::size_t next = sym[i + w];
      auto [it, inserted] = first.try_emplace(block, Seen{s, i, next});
      if (inserted || it->second.next == next) continue;
      DeterminationWitness out;
      out.first_sample = it->second.sample;
      out.first_position = it->second.position;
      out.second_sample = s;
      out.second_position = i;
      out.block = std::move(block);
      out.first_next = it->second.next;
      out.second_next = next;
      return out;
    }
  }
  return std::nullopt;
}

std::size_t minimal_determining_window(const std::vector<SymbolWord>& samples) {
  if (samples.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  std::size_t longest = 0;
  for (const auto& s : samples) longest = std::max(longest, s.symbols.size());
  for (std::size_t w = 1; w <= longest; ++w) {
    if (!determination_witness(samples, w)) return w;
  }
  return longest + 1;
}

std::size_t pigeonhole_bound(std::size_t k, std::size_t w) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < w; ++i) {
    if (k != 0 && out > SIZE_MAX / k) return SIZE_MAX;
    out *= k;
  }
  return out;
}

std::optional<std::size_t> extract_period(const SymbolWord& word, std::size_t w) {
  validate(word);
  if (w == 0) throw Error(ErrorKind::InvalidArgument, "window size must be at least 1");
  const std::size_t bound = pigeonhole_bound(word.k, w);
  const auto& sym = word.symbols;
  if (bound == SIZE_MAX || sym.size() < bound + w) {
    throw Error(ErrorKind::InvalidArgument, "word needs length at least k^w + w");
  }
  // Among the k^w + 1 windows starting at 0..k^w two must agree.
  std::map<std::vector<std::size_t>, std::size_t> seen;
  for (std::size_t j = 0; j <= bound && j + w <= sym.size(); ++j) {
    std::vector<std::size_t> block(sym.begin() + static_cast<long>(j), sym.begin() + static_cast<long>(j + w));
    auto [it, inserted] = seen.try_emplace(std::move(block), j);
    if (inserted) continue;
    const std::size_t p = j - it->second;
    for (std::size_t m = 0; m + p < sym.size(); ++m) {
      if (sym[m] != sym[m + p]) return std::nullopt;
    }
    return p;
  }
  return std::nullopt;
}

}  // namespace speclab
