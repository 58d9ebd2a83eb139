#pragma once

#include "speclab/alphabet.hpp"
#include "speclab/verify.hpp"
#include "speclab/zeros.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace speclab {

/// Successive gaps of a finite piece of Λ, as indices into Σ. The point at
/// index `origin` is the basepoint 0.
struct GapWord {
  std::vector<std::size_t> symbols;
  std::size_t origin = 0;
};

/// λ_0 < λ_1 < ... with λ_origin = 0.
std::vector<Frequency> word_points(const Alphabet& alphabet, const GapWord& word);

enum class Direction { RightOnly, TwoSided };

struct SearchConfig {
  double length = 10.0;  ///< L
  std::size_t max_results = SIZE_MAX;
  double packing_grid_step = 0.0;  ///< unused by the probe scheme, kept for reports
  double packing_tol = 1e-9;
  Direction direction = Direction::RightOnly;
  std::uint64_t node_budget = 10'000'000;
  unsigned threads = 1;
  std::size_t window_cap = 0;  ///< largest recurrence window; 0 means w0 + 4
  bool packing_prune = true;
  bool keep_unconfirmed = false;
  VerifyConfig verify;
};

enum class ResultStatus { Confirmed, CandidateWindowOnly, RefutedAtClosure };

const char* to_string(ResultStatus s);

struct SearchResult {
  GapWord word;
  std::optional<PeriodicSpectrum> closure;
  VerificationReport report;
  ResultStatus status = ResultStatus::CandidateWindowOnly;
  std::string note;
};

struct SearchOutcome {
  std::vector<SearchResult> results;
  std::uint64_t nodes = 0;
  bool budget_exceeded = false;
  std::size_t initial_window = 0;  ///< w0 = ⌈Δ/δ⌉
};

/// Depth-first enumeration of gap words with points in [0, L] (two-sided:
/// [-L/2, L/2]). Branches die when a new difference is not a certified zero
/// or when a probe's packing sum exceeds 1 + tol; two-sided mode also cuts
/// when a probe cannot reach 1 even with the largest possible tail. Results
/// come in depth-first order, symbols ascending, independent of `threads`.
SearchOutcome search_spectra(const ZeroSet& zeros, const Alphabet& alphabet, const SearchConfig& cfg);

/// Pairs i < j with equal w-windows, smallest j - i first (then smallest i).
std::vector<std::pair<std::size_t, std::size_t>> window_recurrence(const std::vector<std::size_t>& symbols,
                                                                   std::size_t w);

struct ClosureReject {
  std::string reason;  ///< "non-integer-period" or "ambiguous"
};

/// Periodic candidate from the gaps in [i, j): accepted only when
/// p = λ_j - λ_i equals j - i.
std::variant<PeriodicSpectrum, ClosureReject> periodic_closure(const ZeroSet& zeros, const Alphabet& alphabet,
                                                               const std::vector<std::size_t>& symbols,
                                                               std::size_t i, std::size_t j);

}  // namespace speclab
