#include "speclab/search.hpp"

#include "speclab/error.hpp"
#include "speclab/fourier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <thread>

namespace speclab {

namespace {

using Key = std::vector<std::size_t>;

std::vector<std::size_t> primitive_root(std::vector<std::size_t> cyc) {
  const std::size_t n = cyc.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t m = 0; m + p < n && periodic; ++m) periodic = cyc[m] == cyc[m + p];
    if (periodic) {
      cyc.resize(p);
      break;
    }
  }
  return cyc;
}

std::vector<std::size_t> minimal_rotation(const std::vector<std::size_t>& cyc) {
  std::vector<std::size_t> best = cyc;
  std::vector<std::size_t> rot(cyc.size());
  for (std::size_t r = 1; r < cyc.size(); ++r) {
    for (std::size_t m = 0; m < cyc.size(); ++m) rot[m] = cyc[(m + r) % cyc.size()];
    if (rot < best) best = rot;
  }
  return best;
}

bool shift_consistent(const std::vector<std::size_t>& sym, std::size_t d) {
  for (std::size_t m = 0; m + d < sym.size(); ++m) {
    if (sym[m] != sym[m + d]) return false;
  }
  return true;
}

struct Event {
  std::uint64_t node = 0;
  SearchResult result;
  Key key;  ///< canonical cyclic word; empty when there is no closure
};

struct Closed {
  ResultStatus status;
  PeriodicSpectrum spectrum;
  VerificationReport report;
};

class Walker {
public:
  Walker(const ZeroSet& zeros, const Alphabet& alphabet, const SearchConfig& cfg, std::uint64_t budget)
      : zeros_(zeros), alphabet_(alphabet), cfg_(cfg), budget_(budget), majorant_(decay_majorant(zeros.omega())), spectrum_(zeros.omega()) {
    for (const auto& e : alphabet.enclosures) values_.push_back(e.mid());
    delta_ = alphabet.delta.mid();
    if (cfg.direction == Direction::TwoSided) {
      hi_ = cfg.length / 2;
      lo_ = -cfg.length / 2;
    } else {
      hi_ = cfg.length;
      lo_ = 0.0;
    }
    hi_exact_ = Rational(hi_);
    lo_exact_ = Rational(lo_);
    right_.push_back(Frequency{});
    right_values_.push_back(0.0);
    probes_.push_back({0.0, 1.0});
    w0_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(alphabet.max_gap / delta_)));
    cap_ = cfg.window_cap ? std::max(cfg.window_cap, w0_) : w0_ + 4;
  }

  /// Explores the subtree below the root's child `s`.
  void run_child(std::size_t s) {
    if (!try_push(s, true)) return;
    visit(true);
    undo(true);
  }

  bool stopped() const { return exceeded || confirmed_keys_.size() >= cfg_.max_results; }

  std::vector<Event> events;
  std::uint64_t nodes = 0;
  bool exceeded = false;
  std::size_t w0() const { return w0_; }

private:
  struct Probe {
    double x;
    double sum;
  };

  bool in_range(const Frequency& p, double value, bool right) const {
    if (p.is_rational()) return right ? p.rational <= hi_exact_ : p.rational >= lo_exact_;
    return right ? value <= hi_ : value >= lo_;
  }

  double one_sided_tail(double r) const {
    if (r <= 0.0) return 1e300;
    return majorant_(r) + majorant_.tail_integral(r) / delta_;
  }

  /// Candidate point for symbol s at the right or left end.
  std::pair<Frequency, double> candidate(std::size_t s, bool right) const {
    if (right) return {right_.back() + alphabet_.symbols[s], right_values_.back() + values_[s]};
    const Frequency& first = left_.empty() ? right_.front() : left_.back();
    const double v = left_.empty() ? right_values_.front() : left_values_.back();
    return {first - alphabet_.symbols[s], v - values_[s]};
  }

  bool try_push(std::size_t s, bool right) {
    auto [p, v] = candidate(s, right);
    if (!in_range(p, v, right)) return false;
    for (const auto* list : {&left_, &right_}) {
      for (const auto& l : *list) {
        if (zeros_.contains(p - l) != ZeroVerdict::Yes) return false;
      }
    }
    std::vector<Probe> next = probes_;
    const double neighbour = right ? right_values_.back() : (left_.empty() ? 0.0 : left_values_.back());
    double own = 0.0;
    for (double l : left_values_) own += spectrum_.power(v - l);
    for (double l : right_values_) own += spectrum_.power(v - l);
    own += 1.0;
    Probe mid{0.5 * (v + neighbour), 0.0};
    for (double l : left_values_) mid.sum += spectrum_.power(mid.x - l);
    for (double l : right_values_) mid.sum += spectrum_.power(mid.x - l);
    for (auto& pr : next) pr.sum += spectrum_.power(pr.x - v);
    mid.sum += spectrum_.power(mid.x - v);
    next.push_back({v, own});
    next.push_back(mid);
    if (cfg_.packing_prune) {
      for (const auto& pr : next) {
        if (pr.sum > 1.0 + cfg_.packing_tol) return false;
      }
    }
    if (right) {
      right_.push_back(std::move(p));
      right_values_.push_back(v);
    } else {
      left_.push_back(std::move(p));
      left_values_.push_back(v);
    }
    if (cfg_.direction == Direction::TwoSided && !lower_bound_ok(next, right)) {
      pop(right);
      return false;
    }
    saved_.push_back(std::move(probes_));
    probes_ = std::move(next);
    symbols_.push_back(s);
    return true;
  }

  /// Completeness: each probe must be able to reach 1 with the mass of the
  /// points not yet placed.
  bool lower_bound_ok(const std::vector<Probe>& probes, bool right_phase) const {
    const double first = left_.empty() ? 0.0 : left_values_.back();
    const double last = right_values_.back();
    for (const auto& pr : probes) {
      const double left_gap = pr.x - first + delta_;
      const double right_gap = (right_phase ? last + delta_ : std::max(last + delta_, hi_)) - pr.x;
      if (pr.sum + one_sided_tail(left_gap) + one_sided_tail(right_gap) < 1.0 - cfg_.packing_tol) return false;
    }
    return true;
  }

  void pop(bool right) {
    if (right) {
      right_.pop_back();
      right_values_.pop_back();
    } else {
      left_.pop_back();
      left_values_.pop_back();
    }
  }

  void undo(bool right) {
    pop(right);
    probes_ = std::move(saved_.back());
    saved_.pop_back();
    symbols_.pop_back();
  }


  bool overshoots(bool right) const {
    for (std::size_t s = values_.size(); s-- > 0;) {
      auto [p, v] = candidate(s, right);
      if (!in_range(p, v, right)) return true;
    }
    return false;
  }

  void visit(bool right) {
    if (++nodes > budget_) {
      exceeded = true;
      return;
    }
    descend(right);
  }

  void descend(bool right) {
    if (overshoots(right)) {
      if (right && cfg_.direction == Direction::TwoSided) {
        right_count_ = symbols_.size();
        descend(false);
        if (stopped()) return;
      } else {
        leaf();
        if (stopped()) return;
      }
    }
    for (std::size_t s = 0; s < values_.size() && !stopped(); ++s) {
      if (!try_push(s, right)) continue;
      visit(right);
      undo(right);
    }
  }

  GapWord current_word() const {
    GapWord w;
    if (cfg_.direction == Direction::TwoSided) {
      const std::size_t n_right = std::min(right_count_, symbols_.size());
      for (std::size_t m = symbols_.size(); m-- > n_right;) w.symbols.push_back(symbols_[m]);
      w.origin = w.symbols.size();
      w.symbols.insert(w.symbols.end(), symbols_.begin(), symbols_.begin() + static_cast<long>(n_right));
    } else {
      w.symbols = symbols_;
    }
    return w;
  }

  void leaf() {
    Event ev;
    ev.node = nodes;
    ev.result.word = current_word();
    const auto& sym = ev.result.word.symbols;
    ev.result.status = ResultStatus::CandidateWindowOnly;
    ev.result.note = "no recurring window";
    bool closed = false;
    for (std::size_t w = w0_; w <= cap_ && !closed && w < sym.size(); ++w) {
      std::set<std::size_t> spans;
      for (const auto& [i, j] : window_recurrence(sym, w)) {
        const std::size_t d = j - i;
        if (!spans.insert(d).second) continue;
        if (!shift_consistent(sym, d)) {
          ev.result.note = "window recurs but the word is not shift-consistent";
          continue;
        }
        auto c = periodic_closure(zeros_, alphabet_, sym, i, j);
        if (auto* rej = std::get_if<ClosureReject>(&c)) {
          ev.result.note = "closure rejected: " + rej->reason;
          continue;
        }
        ev.key = minimal_rotation(primitive_root(Key(sym.begin() + static_cast<long>(i), sym.begin() + static_cast<long>(j))));
        const Closed& cl = close(ev.key);
        ev.result.closure = cl.spectrum;
        ev.result.report = cl.report;
        ev.result.status = cl.status;
        ev.result.note.clear();
        if (cl.status != ResultStatus::Confirmed) ev.result.note = cl.report.reason;
        closed = true;
        break;
      }
    }
    if (ev.result.status == ResultStatus::Confirmed) confirmed_keys_.insert(ev.key);
    if (ev.result.status == ResultStatus::Confirmed || cfg_.keep_unconfirmed) events.push_back(std::move(ev));
  }

  const Closed& close(const Key& key) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    Key doubled = key;
    doubled.insert(doubled.end(), key.begin(), key.end());
    auto c = periodic_closure(zeros_, alphabet_, doubled, 0, key.size());
    if (std::holds_alternative<ClosureReject>(c)) {
      throw Error(ErrorKind::InternalConsistency, "primitive closure lost its integer period");
    }
    Closed cl;
    cl.spectrum = std::get<PeriodicSpectrum>(c);
    cl.report = verify_periodic(zeros_, cl.spectrum, cfg_.verify);
    cl.status = cl.report.overall == Overall::Confirmed ? ResultStatus::Confirmed : ResultStatus::RefutedAtClosure;
    return cache_.emplace(key, std::move(cl)).first->second;
  }

  const ZeroSet& zeros_;
  const Alphabet& alphabet_;
  const SearchConfig& cfg_;
  std::uint64_t budget_;
  DecayMajorant majorant_;
  TransformEvaluator spectrum_;
  std::vector<double> values_;
  double delta_ = 1.0;
  double lo_ = 0.0, hi_ = 0.0;
  Rational lo_exact_, hi_exact_;
  std::vector<Frequency> left_, right_;  ///< left_ runs outward from 0
  std::vector<double> left_values_, right_values_;
  std::vector<Probe> probes_;
  std::vector<std::vector<Probe>> saved_;
  std::vector<std::size_t> symbols_;  ///< growth order
  std::size_t right_count_ = 0;
  std::size_t w0_ = 1, cap_ = 1;
  std::set<Key> confirmed_keys_;
  std::map<Key, Closed> cache_;
};

}  // namespace

const char* to_string(ResultStatus s) {
  switch (s) {
    case ResultStatus::Confirmed: return "confirmed";
    case ResultStatus::CandidateWindowOnly: return "candidate-window-only";
    case ResultStatus::RefutedAtClosure: return "refuted-at-closure";
  }
  return "candidate-window-only";
}

std::vector<Frequency> word_points(const Alphabet& alphabet, const GapWord& word) {
  std::vector<Frequency> pts(word.symbols.size() + 1);
  for (std::size_t m = word.origin; m < word.symbols.size(); ++m) pts[m + 1] = pts[m] + alphabet.symbols[word.symbols[m]];
  for (std::size_t m = word.origin; m-- > 0;) pts[m] = pts[m + 1] - alphabet.symbols[word.symbols[m]];
  return pts;
}

std::vector<std::pair<std::size_t, std::size_t>> window_recurrence(const std::vector<std::size_t>& symbols,
                                                                   std::size_t w) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (w == 0 || symbols.size() < w) return out;
  const std::size_t starts = symbols.size() - w + 1;
  for (std::size_t d = 1; d < starts; ++d) {
    for (std::size_t i = 0; i + d < starts; ++i) {
      if (std::equal(symbols.begin() + static_cast<long>(i), symbols.begin() + static_cast<long>(i + w),
                     symbols.begin() + static_cast<long>(i + d))) {
        out.emplace_back(i, i + d);
      }
    }
  }
  return out;
}

std::variant<PeriodicSpectrum, ClosureReject> periodic_closure(const ZeroSet& zeros, const Alphabet& alphabet,
                                                               const std::vector<std::size_t>& symbols,
                                                               std::size_t i, std::size_t j) {
  if (!(i < j && j <= symbols.size())) throw Error(ErrorKind::InvalidArgument, "closure needs i < j <= length");
  std::vector<Frequency> offsets{Frequency{}};
  Frequency p;
  for (std::size_t m = i; m < j; ++m) {
    p = p + alphabet.symbols[symbols[m]];
    if (m + 1 < j) offsets.push_back(p);
  }
  const long span = static_cast<long>(j - i);
  if (p.is_rational()) {
    if (p.rational != Rational(span)) return ClosureReject{"non-integer-period"};
  } else {
    const Enclosure e = zeros.refine(zeros.enclose(p), 1e-30);
    if (e.radius >= 0.5) return ClosureReject{"ambiguous"};
    if (std::abs(e.mid() - static_cast<double>(span)) > e.radius) return ClosureReject{"non-integer-period"};
  }
  return normalize(zeros, span, std::move(offsets));
}

SearchOutcome search_spectra(const ZeroSet& zeros, const Alphabet& alphabet, const SearchConfig& cfg) {
  if (!zeros.certified()) throw Error(ErrorKind::FloatModeUnsupported, "search needs an exact-rational set");
  if (!(cfg.length >= 2 * alphabet.max_gap)) {
    throw Error(ErrorKind::InvalidArgument, "search length must be at least 2Δ = " + std::to_string(2 * alphabet.max_gap));
  }
  if (!(cfg.packing_tol > 0.0 && cfg.packing_tol <= 1e-3)) {
    throw Error(ErrorKind::InvalidArgument, "packing tolerance must lie in (0, 1e-3]");
  }
  SearchOutcome out;
  out.initial_window =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(alphabet.max_gap / alphabet.delta.mid())));
  if (cfg.max_results == 0) return out;
  if (cfg.node_budget == 0) {
    out.budget_exceeded = true;
    return out;
  }

  if (alphabet.gap_obstruction) return out;

  // The root is node 1. One thread walks the subtrees in order; with more
  // threads each subtree gets its own walker and the merge below replays them
  // in order, so both produce the same results and node counts.
  const std::size_t k = alphabet.size();
  const bool parallel = cfg.threads > 1 && k > 1;
  const std::size_t groups = parallel ? k : 1;
  std::vector<std::unique_ptr<Walker>> walkers(groups);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t g; (g = next.fetch_add(1)) < groups;) {
      walkers[g] = std::make_unique<Walker>(zeros, alphabet, cfg, cfg.node_budget - 1);
      if (parallel) {
        walkers[g]->run_child(g);
      } else {
        for (std::size_t s = 0; s < k && !walkers[g]->stopped(); ++s) walkers[g]->run_child(s);
      }
    }
  };
  const unsigned threads = parallel ? std::min<unsigned>(cfg.threads, static_cast<unsigned>(k)) : 1;
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::uint64_t offset = 1;
  std::set<Key> seen_confirmed, seen_refuted;
  std::size_t confirmed = 0;
  for (std::size_t s = 0; s < groups; ++s) {
    for (auto& ev : walkers[s]->events) {
      const std::uint64_t g = offset + ev.node;
      if (g > cfg.node_budget) break;
      if (ev.result.status == ResultStatus::Confirmed) {
        if (!seen_confirmed.insert(ev.key).second) continue;
        out.results.push_back(std::move(ev.result));
        if (++confirmed == cfg.max_results) {
          out.nodes = g;
          return out;
        }
      } else if (ev.result.status == ResultStatus::RefutedAtClosure) {
        if (seen_refuted.insert(ev.key).second) out.results.push_back(std::move(ev.result));
      } else {
        out.results.push_back(std::move(ev.result));
      }
    }
    offset += walkers[s]->nodes;
    if (offset > cfg.node_budget) {
      out.budget_exceeded = true;
      out.nodes = cfg.node_budget;
      return out;
    }
  }
  out.nodes = offset;
  return out;
}

}  // namespace speclab
