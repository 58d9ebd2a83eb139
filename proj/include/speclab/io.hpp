#pragma once

#include "speclab/alphabet.hpp"
#include "speclab/domain.hpp"
#include "speclab/search.hpp"
#include "speclab/shiftspace.hpp"
#include "speclab/verify.hpp"
#include "speclab/zeros.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace speclab {

using Json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path);

/// {"intervals": [["a","b"], ...], "normalize": bool, "mode": "exact"|"float"}.
/// Exact endpoints are "p/q" or integer strings (or JSON integers); float mode
/// also takes decimals. Other fields are rejected. `force_normalize` turns
/// normalization on regardless of the file.
IntervalSet parse_interval_set(const std::string& text, bool force_normalize = false);
IntervalSet load_interval_set(const std::string& path, bool force_normalize = false);

/// "p/q", or a sum like "1/2 + a0 - 2*a1" over the zero-set basis.
Frequency parse_frequency(const std::string& text, std::size_t basis_size);

/// Either {"period": T, "offsets": [...]} or {"points": [...]}.
struct SpectrumInput {
  std::optional<PeriodicSpectrum> periodic;  ///< as written, not normalized
  std::vector<Frequency> points;
};

SpectrumInput parse_spectrum(const std::string& text, const ZeroSet& zeros);
SpectrumInput load_spectrum(const std::string& path, const ZeroSet& zeros);

std::vector<std::size_t> parse_symbol_list(const std::string& text);

Json to_json(const IntervalSet& omega);
Json to_json(const ZeroSet& zeros, const Frequency& x);
Json to_json(const Enclosure& e);
Json to_json(const ZeroSet& zeros, const PeriodicSpectrum& s);
Json to_json(const ZeroSet& zeros, const VerificationReport& report);
Json to_json(const ZeroSet& zeros, const Alphabet& alphabet, const SearchOutcome& outcome);
Json to_json(const TilingCheck& check);
Json to_json(const std::optional<DeterminationWitness>& witness);

/// The verdict fields of a structured verification report.
struct VerdictSummary {
  Overall overall = Overall::Inconclusive;
  CheckStatus orthogonality = CheckStatus::Inconclusive;
  CheckStatus completeness = CheckStatus::Inconclusive;
  std::optional<long> witness_k;
  std::optional<std::pair<std::string, std::string>> witness_pair;

  friend bool operator==(const VerdictSummary&, const VerdictSummary&) = default;
};

VerdictSummary summarize(const ZeroSet& zeros, const VerificationReport& report);
/// Reads back a report written by to_json. Throws ParseError.
VerdictSummary verdict_from_json(const Json& report);

Overall parse_overall(const std::string& text);
CheckStatus parse_check_status(const std::string& text);

/// Header x,sum,lo,hi, then one row per grid point with 12 significant digits.
void write_profile_csv(std::ostream& os, const TilingProfile& profile);

}  // namespace speclab
