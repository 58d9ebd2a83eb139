#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace speclab {

// Finite-word versions of window determination and periodicity. The
// bi-infinite sequences and closure arguments have no finite counterpart, so
// every answer here is about the supplied words only.

/// A finite piece of a sequence over {0, ..., k-1}.
struct SymbolWord {
  std::size_t k = 1;
  std::vector<std::size_t> symbols;
};

/// Throws InvalidArgument when a symbol is not below k.
void validate(const SymbolWord& word);

struct DeterminationWitness {
  std::size_t first_sample = 0, first_position = 0;    ///< block start in the first occurrence
  std::size_t second_sample = 0, second_position = 0;  ///< block start in the second occurrence
  std::vector<std::size_t> block;
  std::size_t first_next = 0, second_next = 0;  ///< the differing symbols after the block
};

/// Two occurrences of the same w-block followed by different symbols, or
/// nullopt when the samples are consistent with determination by w-windows.
/// Throws InvalidArgument for w = 0.
std::optional<DeterminationWitness> determination_witness(const std::vector<SymbolWord>& samples, std::size_t w);

/// Least w <= the longest sample length without a witness; that length + 1
/// when there is none. Throws InvalidArgument for an empty sample list.
std::size_t minimal_determining_window(const std::vector<SymbolWord>& samples);

/// k^w, saturating at SIZE_MAX.
std::size_t pigeonhole_bound(std::size_t k, std::size_t w);

/// Period p <= k^w found from the first repeated w-window among the first
/// k^w + 1 positions, returned only if word[m] = word[m + p] wherever both
/// exist. Needs length >= k^w + w (InvalidArgument otherwise).
std::optional<std::size_t> extract_period(const SymbolWord& word, std::size_t w);

}  // namespace speclab
