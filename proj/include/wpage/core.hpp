#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wpage/rational.hpp"

namespace wpage {

using PageId = int;
using Time = long long;  // request positions are 1-based

// Raised when an algorithm breaks the serving protocol (evicting a
// non-resident page, leaving a request unserved, exceeding capacity).
struct ProtocolViolation : std::runtime_error {
  explicit ProtocolViolation(const std::string& what) : std::runtime_error(what) {}
};

// Raised by exact solvers when an instance exceeds their state-space limit.
struct SizeLimitError : std::runtime_error {
  explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

enum class ChargingMode { FetchCharged, EvictCharged };

std::string to_string(ChargingMode mode);
ChargingMode charging_mode_from_string(const std::string& s);

struct WeightTable {
  std::vector<Rational> w;  // indexed by PageId over the universe

  int universe() const { return (int)w.size(); }
  const Rational& at(PageId p) const {
    if (p < 0 || p >= (int)w.size()) throw std::invalid_argument("page outside weight table");
    return w[p];
  }
  Rational total() const {
    Rational t;
    for (const auto& x : w) t += x;
    return t;
  }
  void validate() const {
    for (const auto& x : w)
      if (!(x > Rational(0))) throw std::invalid_argument("weights must be positive");
  }

  static WeightTable unit(int n) { return WeightTable{std::vector<Rational>((size_t)n, Rational(1))}; }
  // w(a_i) = c^i
  static WeightTable geometric(int n, long long c) {
    WeightTable t;
    Rational v(1);
    for (int i = 0; i < n; i++) {
      t.w.push_back(v);
      v *= Rational(c);
    }
    return t;
  }
};

struct RequestSequence {
  std::vector<PageId> req;
  int universe{0};

  Time length() const { return (Time)req.size(); }
  PageId at(Time t) const {  // 1-based
    if (t < 1 || t > length()) throw std::invalid_argument("request index out of range");
    return req[(size_t)(t - 1)];
  }
  bool empty() const { return req.empty(); }

  RequestSequence subrange(Time a, Time b) const {  // inclusive, 1-based; empty if a > b
    if (a < 1 || (b > length()) || a > b + 1) throw std::invalid_argument("bad subrange");
    RequestSequence s;
    s.universe = universe;
    for (Time t = a; t <= b; t++) s.req.push_back(at(t));
    return s;
  }

  int distinct_count() const {
    std::set<PageId> d(req.begin(), req.end());
    return (int)d.size();
  }

  void validate() const {
    for (PageId p : req)
      if (p < 0 || p >= universe) throw std::invalid_argument("request outside declared universe");
  }

  static RequestSequence of(std::vector<PageId> pages, int universe = -1) {
    RequestSequence s;
    s.req = std::move(pages);
    if (universe < 0) {
      int u = 0;
      for (PageId p : s.req) u = std::max(u, p + 1);
      s.universe = u;
    } else {
      s.universe = universe;
    }
    s.validate();
    return s;
  }
};

struct CacheState {
  std::set<PageId> resident;
  int capacity{0};

  bool contains(PageId p) const { return resident.count(p) != 0; }
  int size() const { return (int)resident.size(); }
  void insert(PageId p) {
    if ((int)resident.size() >= capacity && !contains(p))
      throw ProtocolViolation("cache capacity exceeded");
    resident.insert(p);
  }
  void erase(PageId p) {
    if (!contains(p)) throw ProtocolViolation("eviction of non-resident page");
    resident.erase(p);
  }
};

// q[p] = fraction of page p NOT in cache. Used to express fractional
// relaxations; the integral machinery never touches it.
struct FractionalCacheState {
  std::vector<Rational> q;
  int capacity{0};

  bool valid() const {
    Rational in_cache;
    for (const auto& x : q) {
      if (x < Rational(0) || x > Rational(1)) return false;
      in_cache += Rational(1) - x;
    }
    return in_cache <= Rational(capacity);
  }
};

enum class ActionKind { Fetch, Evict, Memoryless };

struct Action {
  ActionKind kind;
  PageId page;
};

struct StepActions {
  std::vector<Action> actions;
};

struct LedgerEntry {
  Time t;
  PageId page;
  ActionKind kind;  // Fetch or Evict (the charged event)
  Rational amount;
};

struct CostLedger {
  ChargingMode mode{ChargingMode::FetchCharged};
  std::vector<LedgerEntry> entries;
  Rational total;

  void add(Time t, PageId page, ActionKind kind, Rational amount) {
    entries.push_back({t, page, kind, amount});
    total += amount;
  }
};

// Sum of charges with time in [t1, t2].
Rational ledger_total_between(const CostLedger& ledger, Time t1, Time t2);

struct PredictionStream;  // predictions.hpp

// Per-step prediction handed to an algorithm: the full stream (when one
// exists) plus the PRP next-arrival commitment for the current request
// (0 when no prediction was supplied).
struct PredictionView {
  const PredictionStream* stream{nullptr};
  Time prp_next{0};
};

struct StartInfo {
  int k{0};
  ChargingMode mode{ChargingMode::FetchCharged};
  const WeightTable* weights{nullptr};
  int universe{0};
  const PredictionStream* predictions{nullptr};
  Time horizon{0};  // input length when known, 0 in closed-loop generation
};

// Stepping contract: consume (time, request, prediction view), emit the
// fetches/evictions to apply. The driver owns the authoritative cache and
// validates every action. A Memoryless action serves a page without
// granting it residency.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual int cache_capacity(int k) const { return k; }
  virtual void start(const StartInfo& info) { (void)info; }
  virtual StepActions step(Time t, PageId p, const PredictionView& view) = 0;
  // Batched notification for a run of repeated requests to a page that is
  // already resident; default is a no-op since hits change no state here.
  virtual void on_repeat_hits(Time first_t, PageId p, Time count) {
    (void)first_t;
    (void)p;
    (void)count;
  }
};

// Owns the authoritative cache and ledger for one algorithm run and
// enforces the serving protocol.
class Driver {
 public:
  Driver(OnlineAlgorithm& alg, const StartInfo& info);

  // Returns the actions the algorithm emitted (already applied/validated).
  StepActions feed(Time t, PageId p, const PredictionView& view);
  // First request of a run of `count` identical requests; the remaining
  // count-1 are hits and require residency after the first step.
  void feed_run(Time t, PageId p, Time count, const PredictionView& view);

  const CacheState& cache() const { return cache_; }
  const CostLedger& ledger() const { return ledger_; }
  CostLedger take_ledger() { return std::move(ledger_); }

 private:
  OnlineAlgorithm& alg_;
  StartInfo info_;
  CacheState cache_;
  CostLedger ledger_;
};

CostLedger serve(OnlineAlgorithm& alg, const RequestSequence& seq,
                 const PredictionStream& predictions, const WeightTable& weights,
                 int k, ChargingMode mode);

struct ServeTrace {
  CostLedger ledger;
  std::vector<StepActions> steps;              // 1-based; steps[0] unused
  std::vector<std::set<PageId>> cache_after;   // cache contents after each step
};

ServeTrace serve_traced(OnlineAlgorithm& alg, const RequestSequence& seq,
                        const PredictionStream& predictions, const WeightTable& weights,
                        int k, ChargingMode mode);

}  // namespace wpage
