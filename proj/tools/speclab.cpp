// speclab: spectra of finite unions of intervals.

#include "speclab/alphabet.hpp"
#include "speclab/error.hpp"
#include "speclab/fourier.hpp"
#include "speclab/io.hpp"
#include "speclab/search.hpp"
#include "speclab/shiftspace.hpp"
#include "speclab/verify.hpp"
#include "speclab/zeros.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace speclab;

namespace {

enum ExitCode { kConfirmed = 0, kRefuted = 1, kInputError = 2, kInconclusive = 3 };

enum class Format { Human, Structured, Csv };

struct Options {
  std::string input;
  std::string spectrum;
  std::string format = "human";
  bool normalize = false;
  double zero_cert = 1e-10;
  double packing_tol = 1e-9;
  double dual_tol = 1e-10;
  std::uint64_t seed = 0;

  double max_zero = 20.0;
  double length = 0.0;
  std::size_t max_results = SIZE_MAX;
  bool two_sided = false;
  std::uint64_t node_budget = 10'000'000;
  unsigned threads = 1;
  std::size_t window_cap = 0;
  bool keep_unconfirmed = false;
  long level = 0;
  double from = 0.0, to = 0.0, step = 0.0, radius = 0.0;

  std::vector<std::string> words;
  std::size_t window = 1;
  std::size_t k = 0;
};

unsigned precision_bits() {
  const char* env = std::getenv("SPECLAB_PRECISION_BITS");
  if (!env || !*env) return kDefaultPrecisionBits;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 64 || v > 1 << 16) {
    throw Error(ErrorKind::ParseError, "SPECLAB_PRECISION_BITS must be an integer in [64, 65536]");
  }
  return static_cast<unsigned>(v);
}

Format format_of(const Options& o) {
  if (o.format == "structured") return Format::Structured;
  if (o.format == "csv") return Format::Csv;
  return Format::Human;
}

void check_tolerances(const Options& o) {
  if (!(o.zero_cert > 0.0) || !(o.packing_tol > 0.0) || !(o.dual_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "tolerances must be positive");
  }
}

VerifyConfig verify_config(const Options& o) {
  VerifyConfig c;
  c.dual_tol = o.dual_tol;
  c.packing_tol = o.packing_tol;
  c.bits = precision_bits();
  c.retry_bits = std::max(c.bits, 1024u);
  return c;
}

ZeroSet zero_set(const IntervalSet& omega, const Options& o, double bound) {
  return ZeroSet::build(omega, bound, precision_bits(), o.zero_cert);
}

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::string join(const std::vector<std::string>& items, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::vector<std::string> describe_all(const ZeroSet& z, const std::vector<Frequency>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(z.describe(x));
  return out;
}

std::string symbol_text(const ZeroSet& z, const Alphabet& a, std::size_t i) {
  if (i < a.symbols.size()) return z.describe(a.symbols[i]);
  return num(a.enclosures[i].mid());
}

/// Float sets get their zeros from a scan that must reach past Δ.
std::pair<ZeroSet, Alphabet> zeros_and_alphabet(const IntervalSet& omega, const Options& o) {
  ZeroSet z = zero_set(omega, o, omega.exact() ? 0.0 : o.max_zero);
  Alphabet a = build_alphabet(z);
  if (!omega.exact() && a.max_gap + 1.0 > o.max_zero) {
    z = zero_set(omega, o, a.max_gap + 1.0);
    a = build_alphabet(z);
  }
  return {std::move(z), std::move(a)};
}

int run_analyze(const Options& o) {
  const IntervalSet omega = load_interval_set(o.input, o.normalize);
  auto [z, a] = zeros_and_alphabet(omega, o);
  std::optional<SpectralGapInfo> gap;
  if (omega.exact()) gap = spectral_gap(omega);
  Json j;
  j["set"] = to_json(omega);
  j["certified"] = z.certified();
  j["delta"] = omega.exact() && a.delta.exact ? Json(z.describe(*a.delta.exact)) : Json(a.delta.mid());
  j["Delta"] = a.max_gap;
  j["gap_obstruction"] = a.gap_obstruction;
  Json sigma = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) sigma.push_back(symbol_text(z, a, i));
  j["alphabet"] = sigma;
  j["k"] = a.size();
  if (gap) {
    j["spectral_gap"] = to_string(gap->a);
    j["spectral_gap_at_support_edge"] = gap->at_support_edge;
  }
  if (format_of(o) == Format::Structured) {
    print(j);
    return kConfirmed;
  }
  std::cout << "mode          " << j["set"]["mode"].get<std::string>() << '\n';
  std::cout << "n             " << omega.size() << '\n';
  if (omega.exact()) {
    std::cout << "measure       " << to_string(omega.measure()) << '\n';
    std::cout << "diameter      " << to_string(omega.diameter()) << '\n';
    std::cout << "q             " << omega.common_denominator().str() << '\n';
  } else {
    std::cout << "diameter      " << num(omega.diameter_approx()) << '\n';
  }
  std::cout << "delta         " << (j["delta"].is_string() ? j["delta"].get<std::string>() : num(a.delta.mid())) << '\n';
  std::cout << "Delta         " << num(a.max_gap) << '\n';
  std::vector<std::string> names;
  for (const auto& s : sigma) names.push_back(s.get<std::string>());
  std::cout << "alphabet      {" << join(names) << "}  k=" << a.size() << '\n';
  if (a.gap_obstruction) std::cout << "              Delta < delta: no spectrum exists\n";
  if (gap) {
    std::cout << "spectral gap  " << to_string(gap->a) << (gap->at_support_edge ? "  (at the support edge)" : "") << '\n';
  } else {
    std::cout << "spectral gap  unavailable in float mode\n";
  }
  if (!z.certified()) std::cout << "note          float mode: zeros are not certified\n";
  return kConfirmed;
}

int run_zeros(const Options& o) {
  const IntervalSet omega = load_interval_set(o.input, o.normalize);
  if (!(o.max_zero > 0.0)) throw Error(ErrorKind::InvalidArgument, "--max must be positive");
  const ZeroSet z = zero_set(omega, o, o.max_zero);
  const auto zs = z.zeros_up_to(o.max_zero);
  Json j;
  j["certified"] = z.certified();
  if (z.certified()) {
    j["period"] = z.period().str();
    j["basis_size"] = z.basis_size();
  }
  Json list = Json::array();
  for (const auto& e : zs) {
    Json item = to_json(e);
    if (e.exact) item["value"] = z.describe(*e.exact);
    list.push_back(item);
  }
  j["zeros"] = list;
  if (format_of(o) == Format::Structured) {
    print(j);
    return kConfirmed;
  }
  if (z.certified()) std::cout << "period q = " << z.period().str() << ", " << z.basis_size() << " algebraic basis zero(s)\n";
  for (const auto& e : zs) {
    std::cout << std::setw(24) << std::left << (e.exact ? z.describe(*e.exact) : std::string("~")) << num(e.mid())
              << "  +- " << e.radius << '\n';
  }
  return kConfirmed;
}

int run_alphabet(const Options& o) {
  const IntervalSet omega = load_interval_set(o.input, o.normalize);
  auto [z, a] = zeros_and_alphabet(omega, o);
  Json j;
  j["delta"] = a.delta.mid();
  j["Delta"] = a.max_gap;
  j["gap_obstruction"] = a.gap_obstruction;
  Json list = Json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    Json item = to_json(a.enclosures[i]);
    item["value"] = symbol_text(z, a, i);
    list.push_back(item);
  }
  j["symbols"] = list;
  if (format_of(o) == Format::Structured) {
    print(j);
    return kConfirmed;
  }
  std::cout << "Delta = " << num(a.max_gap) << ", k = " << a.size() << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) std::cout << "  s" << i << " = " << symbol_text(z, a, i) << '\n';
  return kConfirmed;
}

int exit_for(Overall o) {
  switch (o) {
    case Overall::Confirmed: return kConfirmed;
    case Overall::Refuted: return kRefuted;
    case Overall::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

void print_report(const ZeroSet& z, const VerificationReport& r) {
  std::cout << "verdict        " << to_string(r.overall);
  if (!r.reason.empty()) std::cout << " (" << r.reason << ")";
  std::cout << '\n';
  std::cout << "orthogonality  " << to_string(r.orthogonality.status) << ", " << r.orthogonality.differences_checked
            << " differences";
  if (r.orthogonality.witness) {
    const auto& [a, b] = *r.orthogonality.witness;
    std::cout << "; witness " << z.describe(a) << ", " << z.describe(b) << " (difference " << z.describe(b - a) << ")";
  }
  std::cout << '\n';
  std::cout << "packing        max sum " << num(r.packing.max_sum) << " on [" << num(r.packing.grid_lo) << ", "
            << num(r.packing.grid_hi) << "] step " << num(r.packing.grid_step) << '\n';
  std::cout << "completeness   " << to_string(r.completeness.status);
  if (!r.completeness.reason.empty()) std::cout << " (" << r.completeness.reason << ")";
  std::cout << '\n';
  for (const auto& c : r.completeness.checks) {
    std::cout << "  k=" << std::setw(4) << std::left << c.k << " A(k/T)=" << std::setw(8) << to_string(c.autocorrelation)
              << " |P(k/T)|=" << std::setw(14) << num(c.offset_sum_abs) << (c.passed ? "pass" : "FAIL") << "  via "
              << c.via << '\n';
  }
}

int run_verify(const Options& o) {
  const IntervalSet omega = load_interval_set(o.input, o.normalize);
  if (!omega.exact()) throw Error(ErrorKind::FloatModeUnsupported, "verify needs exact rational endpoints");
  const ZeroSet z = zero_set(omega, o, 0.0);
  const SpectrumInput in = load_spectrum(o.spectrum, z);
  const VerifyConfig cfg = verify_config(o);
  VerificationReport report;
  Json j;
  if (in.periodic) {
    const PeriodicSpectrum s = normalize(z, in.periodic->period, in.periodic->offsets);
    report = verify_periodic(z, s, cfg);
    j["spectrum"] = to_json(z, s);
  } else {
    report = verify_window(z, in.points, cfg);
    j["points"] = describe_all(z, in.points);
  }
  j["report"] = to_json(z, report);
  if (format_of(o) == Format::Structured) {
    print(j);
  } else {
    print_report(z, report);
  }
  return exit_for(report.overall);
}

int run_search(const Options& o) {
  const IntervalSet omega = load_interval_set(o.input, o.normalize);
  if (!omega.exact()) throw Error(ErrorKind::FloatModeUnsupported, "search needs exact rational endpoints");
  const ZeroSet z = zero_set(omega, o, 0.0);
  const Alphabet a = build_alphabet(z);
  SearchConfig cfg;
  cfg.length = o.length;
  cfg.max_results = o.max_results;
  cfg.packing_tol = o.packing_tol;
  cfg.direction = o.two_sided ? Direction::TwoSided : Direction::RightOnly;
  cfg.node_budget = o.node_budget;
  cfg.threads = std::max(1u, o.threads);
  cfg.window_cap = o.window_cap;
  cfg.keep_unconfirmed = o.keep_unconfirmed;
  cfg.verify = verify_config(o);
  const SearchOutcome out = search_spectra(z, a, cfg);
  std::size_t confirmed = 0;
  for (const auto& r : out.results) confirmed += r.status == ResultStatus::Confirmed;
  if (format_of(o) == Format::Structured) {
    print(to_json(z, a, out));
  } else {
    std::cout << "explored " << out.nodes << " nodes" << (out.budget_exceeded ? " (node budget exceeded)" : "")
              << ", w0 = " << out.initial_window << ", " << confirmed << " confirmed\n";
    if (a.gap_obstruction) std::cout << "Delta < delta: no spectrum exists\n";
    for (const auto& r : out.results) {
      std::cout << to_string(r.status);
      if (r.closure) {
        std::cout << "  T=" << r.closure->period << "  offsets {" << join(describe_all(z, r.closure->offsets)) << "}";
      }
      std::vector<std::string> gaps;
      for (std::size_t s : r.word.symbols) gaps.push_back(symbol_text(z, a, s));
      std::cout << "  gaps (" << join(gaps) << ")";
      if (!r.note.empty()) std::cout << "  [" << r.note << "]";
      std::cout << '\n';
    }
  }
  return confirmed > 0 ? kConfirmed : kInconclusive;
}

int run_tilecheck(const Options& o) {
  const IntervalSet omega = load_interval_set(o.input, o.normalize);
  const TilingCheck t = check_tiling_by_omega(omega, o.level);
  if (format_of(o) == Format::Structured) {
    print(to_json(t));
  } else {
    std::cout << "level " << t.level << ": " << (t.passed ? "tiles" : "does not tile") << '\n';
    for (const auto& [x, m] : t.profile) std::cout << "  from " << to_string(x) << "  multiplicity " << m << '\n';
    if (t.witness) std::cout << "witness point " << to_string(t.witness->first) << " covered " << t.witness->second << " times\n";
  }
  return t.passed ? kConfirmed : kRefuted;
}

int run_profile(const Options& o) {
  const IntervalSet omega = load_interval_set(o.input, o.normalize);
  if (!omega.exact()) throw Error(ErrorKind::FloatModeUnsupported, "profile needs exact rational endpoints");
  if (!(o.step > 0.0)) throw Error(ErrorKind::InvalidArgument, "--step must be positive");
  if (!(o.radius > 0.0)) throw Error(ErrorKind::NonpositiveRadius, "--radius must be positive");
  const ZeroSet z = zero_set(omega, o, 0.0);
  const SpectrumInput in = load_spectrum(o.spectrum, z);
  std::vector<double> window;
  if (in.periodic) {
    const double margin = o.radius + 2.0 * static_cast<double>(in.periodic->period);
    window = approximate(z, expand(z, *in.periodic, o.from - margin, o.to + margin));
  } else {
    window = approximate(z, in.points);
  }
  const TilingProfile p =
      numeric_tiling_profile(omega, window, o.from, o.to, o.step, o.radius, z.smallest().mid());
  if (format_of(o) == Format::Structured) {
    Json j;
    j["band"] = p.band;
    j["consistent"] = p.consistent;
    Json rows = Json::array();
    for (const auto& r : p.rows) rows.push_back({r.x, r.sum, r.lo, r.hi});
    j["rows"] = rows;
    print(j);
  } else {
    write_profile_csv(std::cout, p);
  }
  return kConfirmed;
}

std::vector<SymbolWord> words_of(const Options& o) {
  std::vector<SymbolWord> out;
  for (const auto& w : o.words) {
    SymbolWord sw;
    sw.symbols = parse_symbol_list(w);
    out.push_back(std::move(sw));
  }
  std::size_t k = o.k;
  for (const auto& w : out) {
    for (std::size_t s : w.symbols) k = std::max(k, o.k ? o.k : s + 1);
  }
  for (auto& w : out) w.k = std::max<std::size_t>(k, 1);
  return out;
}

int run_determine(const Options& o) {
  const auto samples = words_of(o);
  const auto w = determination_witness(samples, o.window);
  if (format_of(o) == Format::Structured) {
    print(to_json(w));
  } else if (!w) {
    std::cout << "consistent at w=" << o.window << '\n';
  } else {
    std::vector<std::string> block;
    for (std::size_t s : w->block) block.push_back(std::to_string(s));
    std::cout << "witness: block (" << join(block, ",") << ") followed by " << w->first_next << " (sample "
              << w->first_sample << ", position " << w->first_position << ") and by " << w->second_next << " (sample "
              << w->second_sample << ", position " << w->second_position << ")\n";
  }
  return w ? kRefuted : kConfirmed;
}

int run_minwindow(const Options& o) {
  const std::size_t w = minimal_determining_window(words_of(o));
  if (format_of(o) == Format::Structured) {
    print(Json{{"window", w}});
  } else {
    std::cout << w << '\n';
  }
  return kConfirmed;
}

int run_period(const Options& o) {
  const auto words = words_of(o);
  if (words.size() != 1) throw Error(ErrorKind::InvalidArgument, "period takes exactly one --word");
  const auto p = extract_period(words.front(), o.window);
  const std::size_t bound = pigeonhole_bound(words.front().k, o.window);
  if (format_of(o) == Format::Structured) {
    Json j;
    j["period"] = p ? Json(*p) : Json(nullptr);
    j["bound"] = bound;
    print(j);
  } else if (p) {
    std::cout << "period " << *p << " (bound k^w = " << bound << ")\n";
  } else {
    std::cout << "no period consistent with the word\n";
  }
  return p ? kConfirmed : kInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"speclab: spectra and tilings of finite unions of intervals"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "structured", "csv"}));
  app.add_flag("--normalize", o.normalize, "Scale the set to measure 1");
  app.add_option("--zero-cert", o.zero_cert, "Bound on |ft| at certified zeros");
  app.add_option("--packing-tol", o.packing_tol, "Packing tolerance");
  app.add_option("--dual-tol", o.dual_tol, "Tolerance for the dual completeness checks");
  app.add_option("--seed", o.seed, "Seed for randomized auxiliary checks");

  auto* analyze = app.add_subcommand("analyze", "Measure, zero set data, alphabet and spectral gap");
  analyze->add_option("file", o.input)->required()->check(CLI::ExistingFile);

  auto* zeros = app.add_subcommand("zeros", "Positive zeros of the transform up to a bound");
  zeros->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  zeros->add_option("--max", o.max_zero, "Largest zero to list")->required();

  auto* alphabet = app.add_subcommand("alphabet", "Gap alphabet");
  alphabet->add_option("file", o.input)->required()->check(CLI::ExistingFile);

  auto* verify = app.add_subcommand("verify", "Verify a candidate spectrum");
  verify->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  verify->add_option("--spectrum", o.spectrum)->required()->check(CLI::ExistingFile);

  auto* search = app.add_subcommand("search", "Search for periodic spectra");
  search->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  search->add_option("--length", o.length, "Window length L")->required();
  search->add_option("--max-results", o.max_results, "Stop after this many confirmed spectra");
  search->add_flag("--two-sided", o.two_sided, "Grow in both directions with completeness pruning");
  search->add_option("--node-budget", o.node_budget, "Largest number of search nodes");
  search->add_option("--threads", o.threads, "Worker threads");
  search->add_option("--window-cap", o.window_cap, "Largest recurrence window");
  search->add_flag("--keep-unconfirmed", o.keep_unconfirmed, "Also list unconfirmed leaves");

  auto* tilecheck = app.add_subcommand("tilecheck", "Does the set tile at level T with period 1/T");
  tilecheck->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  tilecheck->add_option("--level", o.level, "Level T")->required()->check(CLI::PositiveNumber);

  auto* profile = app.add_subcommand("profile", "Tiling sums of the power spectrum on a grid (CSV)");
  profile->add_option("file", o.input)->required()->check(CLI::ExistingFile);
  profile->add_option("--spectrum", o.spectrum)->required()->check(CLI::ExistingFile);
  profile->add_option("--from", o.from)->required();
  profile->add_option("--to", o.to)->required();
  profile->add_option("--step", o.step)->required();
  profile->add_option("--radius", o.radius)->required();

  auto* shift = app.add_subcommand("shiftspace", "Window determination and periods of symbol words");
  shift->require_subcommand(1);
  auto add_words = [&](CLI::App* sub, bool with_window) {
    sub->add_option("--word", o.words, "Comma-separated symbol indices (repeatable)")->required();
    sub->add_option("-k,--alphabet-size", o.k, "Alphabet size (default: largest symbol + 1)");
    if (with_window) sub->add_option("-w,--window", o.window, "Window size")->required()->check(CLI::PositiveNumber);
  };
  auto* determine = shift->add_subcommand("determine", "Witness against determination by w-windows");
  add_words(determine, true);
  auto* minwindow = shift->add_subcommand("minwindow", "Least determining window");
  add_words(minwindow, false);
  auto* period = shift->add_subcommand("period", "Period from a repeated w-window");
  add_words(period, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    check_tolerances(o);
    if (format_of(o) == Format::Csv && !profile->parsed()) {
      throw Error(ErrorKind::InvalidArgument, "csv output is only available for profile");
    }
    if (analyze->parsed()) return run_analyze(o);
    if (zeros->parsed()) return run_zeros(o);
    if (alphabet->parsed()) return run_alphabet(o);
    if (verify->parsed()) return run_verify(o);
    if (search->parsed()) return run_search(o);
    if (tilecheck->parsed()) return run_tilecheck(o);
    if (profile->parsed()) return run_profile(o);
    if (determine->parsed()) return run_determine(o);
    if (minwindow->parsed()) return run_minwindow(o);
    if (period->parsed()) return run_period(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::IllConditioned:
      case ErrorKind::InternalConsistency:
        return kInconclusive;
      default:
        return kInputError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
