#include "speclab/io.hpp"

#include "speclab/error.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace speclab {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ParseError, where + ": " + what);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

Rational exact_endpoint(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(BigInt(v.get<long long>()));
  if (!v.is_string()) parse_fail(where, "expected a rational string \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    parse_fail(where, e.what());
  }
}

double float_endpoint(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) parse_fail(where, "expected a number");
  const auto s = v.get<std::string>();
  if (s.find('/') != std::string::npos) return to_double(exact_endpoint(v, where));
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    parse_fail(where, "not a number: \"" + s + "\"");
  }
  if (used != s.size()) parse_fail(where, "not a number: \"" + s + "\"");
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

std::vector<Frequency> frequency_list(const Json& arr, const std::string& field, const ZeroSet& zeros) {
  if (!arr.is_array()) parse_fail(field, "expected a list");
  std::vector<Frequency> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = field + "[" + std::to_string(i) + "]";
    const Json& v = arr[i];
    if (v.is_number_integer()) {
      out.emplace_back(Rational(BigInt(v.get<long long>())));
    } else if (v.is_string()) {
      try {
        out.push_back(parse_frequency(v.get<std::string>(), zeros.basis_size()));
      } catch (const Error& e) {
        parse_fail(where, e.what());
      }
    } else {
      parse_fail(where, "expected a rational string");
    }
  }
  return out;
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IntervalSet parse_interval_set(const std::string& text, bool force_normalize) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) parse_fail("document", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "intervals" && key != "normalize" && key != "mode") parse_fail(key, "unknown field");
  }
  if (!doc.contains("intervals")) parse_fail("intervals", "missing field");
  bool normalize = force_normalize;
  if (doc.contains("normalize")) {
    if (!doc["normalize"].is_boolean()) parse_fail("normalize", "expected true or false");
    normalize = normalize || doc["normalize"].get<bool>();
  }
  Mode mode = Mode::ExactRational;
  if (doc.contains("mode")) {
    const Json& m = doc["mode"];
    if (m == "exact") {
      mode = Mode::ExactRational;
    } else if (m == "float") {
      mode = Mode::Float;
    } else {
      parse_fail("mode", "expected \"exact\" or \"float\"");
    }
  }
  const Json& list = doc["intervals"];
  if (!list.is_array()) parse_fail("intervals", "expected a list of [a, b] pairs");
  std::vector<std::pair<Rational, Rational>> exact;
  std::vector<std::pair<double, double>> approx;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "intervals[" + std::to_string(i) + "]";
    const Json& pair = list[i];
    if (!pair.is_array() || pair.size() != 2) parse_fail(where, "expected [a, b]");
    if (mode == Mode::ExactRational) {
      exact.emplace_back(exact_endpoint(pair[0], where + "[0]"), exact_endpoint(pair[1], where + "[1]"));
    } else {
      approx.emplace_back(float_endpoint(pair[0], where + "[0]"), float_endpoint(pair[1], where + "[1]"));
    }
  }
  return mode == Mode::ExactRational ? IntervalSet::from_rational(std::move(exact), normalize)
                                     : IntervalSet::from_double(std::move(approx), normalize);
}

IntervalSet load_interval_set(const std::string& path, bool force_normalize) {
  return parse_interval_set(read_text_file(path), force_normalize);
}

Frequency parse_frequency(const std::string& text, std::size_t basis_size) {
  // Split into signed terms at top-level '+' and '-' that follow a term.
  std::vector<std::pair<int, std::string>> terms;
  std::string current;
  int sign = 1;
  bool have_term = false;
  for (char ch : text) {
    if ((ch == '+' || ch == '-') && have_term) {
      terms.emplace_back(sign, trim(current));
      current.clear();
      sign = ch == '-' ? -1 : 1;
      have_term = false;
      continue;
    }
    if (ch == '-' && !have_term && trim(current).empty()) {
      sign = -sign;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(ch))) have_term = true;
    current += ch;
  }
  if (!have_term) throw Error(ErrorKind::ParseError, "empty frequency \"" + text + "\"");
  terms.emplace_back(sign, trim(current));

  Frequency out;
  for (const auto& [s, term] : terms) {
    const auto a = term.find('a');
    if (a == std::string::npos) {
      out = out + Frequency(Rational(s) * parse_rational(term));
      continue;
    }
    long coefficient = 1;
    if (a > 0) {
      const std::string lhs = trim(term.substr(0, a));
      if (lhs.empty() || lhs.back() != '*') throw Error(ErrorKind::ParseError, "bad term \"" + term + "\"");
      coefficient = to_ll(numerator_of(parse_rational(lhs.substr(0, lhs.size() - 1))));
      if (!is_integer(parse_rational(lhs.substr(0, lhs.size() - 1)))) {
        throw Error(ErrorKind::ParseError, "basis coefficients must be integers: \"" + term + "\"");
      }
    }
    const std::string index = term.substr(a + 1);
    if (index.empty() || !std::all_of(index.begin(), index.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw Error(ErrorKind::ParseError, "bad basis term \"" + term + "\"");
    }
    const std::size_t r = std::stoul(index);
    if (r >= basis_size) throw Error(ErrorKind::ParseError, "basis element a" + index + " does not exist for this set");
    out = out + Frequency::basis(r, static_cast<int>(s * coefficient));
  }
  return out;
}

SpectrumInput parse_spectrum(const std::string& text, const ZeroSet& zeros) {
  const Json doc = parse_json(text);
  if (!doc.is_object()) parse_fail("document", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "period" && key != "offsets" && key != "points") parse_fail(key, "unknown field");
  }
  SpectrumInput out;
  if (doc.contains("points")) {
    if (doc.contains("period") || doc.contains("offsets")) parse_fail("points", "cannot be combined with period/offsets");
    out.points = frequency_list(doc["points"], "points", zeros);
    return out;
  }
  if (!doc.contains("period") || !doc.contains("offsets")) parse_fail("document", "need period and offsets, or points");
  const Json& p = doc["period"];
  long period = 0;
  if (p.is_number_integer()) {
    period = p.get<long>();
  } else if (p.is_string()) {
    const Rational r = exact_endpoint(p, "period");
    if (!is_integer(r)) parse_fail("period", "must be an integer");
    period = to_ll(numerator_of(r));
  } else {
    parse_fail("period", "expected an integer");
  }
  if (period <= 0) parse_fail("period", "must be positive");
  out.periodic = PeriodicSpectrum{period, frequency_list(doc["offsets"], "offsets", zeros)};
  return out;
}

SpectrumInput load_spectrum(const std::string& path, const ZeroSet& zeros) {
  return parse_spectrum(read_text_file(path), zeros);
}

std::vector<std::size_t> parse_symbol_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw Error(ErrorKind::ParseError, "symbol list expects comma-separated indices, got \"" + text + "\"");
    }
    out.push_back(std::stoul(item));
  }
  return out;
}

Json to_json(const IntervalSet& omega) {
  Json j;
  j["mode"] = omega.exact() ? "exact" : "float";
  Json list = Json::array();
  if (omega.exact()) {
    for (const auto& iv : omega.intervals()) list.push_back({to_string(iv.lo), to_string(iv.hi)});
    j["intervals"] = list;
    j["n"] = omega.size();
    j["measure"] = to_string(omega.measure());
    j["diameter"] = to_string(omega.diameter());
    j["q"] = omega.common_denominator().str();
  } else {
    for (const auto& [a, b] : omega.approx_intervals()) list.push_back({a, b});
    j["intervals"] = list;
    j["n"] = omega.size();
    double m = 0.0;
    for (const auto& [a, b] : omega.approx_intervals()) m += b - a;
    j["measure"] = m;
    j["diameter"] = omega.diameter_approx();
  }
  return j;
}

Json to_json(const ZeroSet& zeros, const Frequency& x) { return zeros.describe(x); }

Json to_json(const Enclosure& e) {
  Json j;
  j["midpoint"] = e.mid();
  j["radius"] = e.radius;
  return j;
}

Json to_json(const ZeroSet& zeros, const PeriodicSpectrum& s) {
  Json j;
  j["period"] = s.period;
  Json offs = Json::array();
  for (const auto& o : s.offsets) offs.push_back(zeros.describe(o));
  j["offsets"] = offs;
  return j;
}

Json to_json(const ZeroSet& zeros, const VerificationReport& report) {
  Json j;
  j["overall"] = to_string(report.overall);
  j["reason"] = report.reason;
  Json o;
  o["status"] = to_string(report.orthogonality.status);
  o["differences_checked"] = report.orthogonality.differences_checked;
  if (report.orthogonality.witness) {
    const auto& [a, b] = *report.orthogonality.witness;
    o["witness"] = {zeros.describe(a), zeros.describe(b)};
    o["witness_difference"] = zeros.describe(b - a);
  }
  j["orthogonality"] = o;
  Json p;
  p["max_sum"] = report.packing.max_sum;
  p["grid"] = {report.packing.grid_lo, report.packing.grid_hi, report.packing.grid_step};
  p["window_size"] = report.packing.window_size;
  j["packing"] = p;
  Json c;
  c["status"] = to_string(report.completeness.status);
  if (!report.completeness.reason.empty()) c["reason"] = report.completeness.reason;
  if (report.completeness.witness_k) c["witness_k"] = *report.completeness.witness_k;
  Json checks = Json::array();
  for (const auto& d : report.completeness.checks) {
    Json e;
    e["k"] = d.k;
    e["autocorrelation"] = to_string(d.autocorrelation);
    e["offset_sum_abs"] = d.offset_sum_abs;
    e["offset_sum_bound"] = d.offset_sum_bound;
    e["passed"] = d.passed;
    e["via"] = d.via;
    checks.push_back(e);
  }
  c["checks"] = checks;
  j["completeness"] = c;
  return j;
}

Json to_json(const ZeroSet& zeros, const Alphabet& alphabet, const SearchOutcome& outcome) {
  Json j;
  j["nodes"] = outcome.nodes;
  j["budget_exceeded"] = outcome.budget_exceeded;
  j["initial_window"] = outcome.initial_window;
  Json results = Json::array();
  for (const auto& r : outcome.results) {
    Json e;
    e["status"] = to_string(r.status);
    Json gaps = Json::array();
    for (std::size_t s : r.word.symbols) gaps.push_back(zeros.describe(alphabet.symbols[s]));
    e["gaps"] = gaps;
    e["symbols"] = r.word.symbols;
    e["origin"] = r.word.origin;
    if (r.closure) {
      e["closure"] = to_json(zeros, *r.closure);
      e["report"] = to_json(zeros, r.report);
    }
    if (!r.note.empty()) e["note"] = r.note;
    results.push_back(e);
  }
  j["results"] = results;
  return j;
}

Json to_json(const TilingCheck& check) {
  Json j;
  j["level"] = check.level;
  j["tiles"] = check.passed;
  Json prof = Json::array();
  for (const auto& [x, m] : check.profile) prof.push_back({{"from", to_string(x)}, {"multiplicity", m}});
  j["profile"] = prof;
  if (check.witness) j["witness"] = {{"point", to_string(check.witness->first)}, {"multiplicity", check.witness->second}};
  return j;
}

Json to_json(const std::optional<DeterminationWitness>& w) {
  Json j;
  j["consistent"] = !w.has_value();
  if (w) {
    j["block"] = w->block;
    j["first"] = {{"sample", w->first_sample}, {"position", w->first_position}, {"next", w->first_next}};
    j["second"] = {{"sample", w->second_sample}, {"position", w->second_position}, {"next", w->second_next}};
  }
  return j;
}

VerdictSummary summarize(const ZeroSet& zeros, const VerificationReport& report) {
  VerdictSummary s;
  s.overall = report.overall;
  s.orthogonality = report.orthogonality.status;
  s.completeness = report.completeness.status;
  s.witness_k = report.completeness.witness_k;
  if (report.orthogonality.witness) {
    s.witness_pair = std::pair{zeros.describe(report.orthogonality.witness->first),
                               zeros.describe(report.orthogonality.witness->second)};
  }
  return s;
}

Overall parse_overall(const std::string& text) {
  for (Overall o : {Overall::Confirmed, Overall::Refuted, Overall::Inconclusive}) {
    if (text == to_string(o)) return o;
  }
  throw Error(ErrorKind::ParseError, "unknown verdict \"" + text + "\"");
}

CheckStatus parse_check_status(const std::string& text) {
  for (CheckStatus c : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::Inconclusive, CheckStatus::NotApplicable}) {
    if (text == to_string(c)) return c;
  }
  throw Error(ErrorKind::ParseError, "unknown check status \"" + text + "\"");
}

VerdictSummary verdict_from_json(const Json& report) {
  try {
    VerdictSummary s;
    s.overall = parse_overall(report.at("overall").get<std::string>());
    const Json& o = report.at("orthogonality");
    s.orthogonality = parse_check_status(o.at("status").get<std::string>());
    if (o.contains("witness")) s.witness_pair = std::pair{o["witness"][0].get<std::string>(), o["witness"][1].get<std::string>()};
    const Json& c = report.at("completeness");
    s.completeness = parse_check_status(c.at("status").get<std::string>());
    if (c.contains("witness_k")) s.witness_k = c["witness_k"].get<long>();
    return s;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("report: ") + e.what());
  }
}

void write_profile_csv(std::ostream& os, const TilingProfile& profile) {
  os << "x,sum,lo,hi\n";
  for (const auto& r : profile.rows) {
    os << fmt12(r.x) << ',' << fmt12(r.sum) << ',' << fmt12(r.lo) << ',' << fmt12(r.hi) << '\n';
  }
}

}  // namespace speclab
