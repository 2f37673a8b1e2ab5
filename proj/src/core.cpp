#include "wpage/core.hpp"

#include "wpage/predictions.hpp"

namespace wpage {

std::string to_string(ChargingMode mode) {
  return mode == ChargingMode::FetchCharged ? "fetch" : "evict";
}

ChargingMode charging_mode_from_string(const std::string& s) {
  if (s == "fetch") return ChargingMode::FetchCharged;
  if (s == "evict") return ChargingMode::EvictCharged;
  throw std::invalid_argument("unknown charging mode: " + s);
}

Rational ledger_total_between(const CostLedger& ledger, Time t1, Time t2) {
  if (t1 > t2) throw std::invalid_argument("ledger range with t1 > t2");
  Rational sum;
  for (const auto& e : ledger.entries)
    if (e.t >= t1 && e.t <= t2) sum += e.amount;
  return sum;
}

Driver::Driver(OnlineAlgorithm& alg, const StartInfo& info) : alg_(alg), info_(info) {
  cache_.capacity = alg.cache_capacity(info.k);
  ledger_.mode = info.mode;
  alg_.start(info_);
}

StepActions Driver::feed(Time t, PageId p, const PredictionView& view) {
  StepActions acts = alg_.step(t, p, view);
  bool memo_served = false;
  const bool fetch_mode = info_.mode == ChargingMode::FetchCharged;
  for (const Action& a : acts.actions) {
    const Rational& w = info_.weights->at(a.page);
    switch (a.kind) {
      case ActionKind::Fetch:
        if (!cache_.contains(a.page)) {  // refetch of a resident page is a free no-op
          cache_.insert(a.page);
          if (fetch_mode) ledger_.add(t, a.page, ActionKind::Fetch, w);
        }
        break;
      case ActionKind::Evict:
        cache_.erase(a.page);
        if (!fetch_mode) ledger_.add(t, a.page, ActionKind::Evict, w);
        break;
      case ActionKind::Memoryless:
        // fetch + immediate eviction; charged in either mode, never resident
        ledger_.add(t, a.page, fetch_mode ? ActionKind::Fetch : ActionKind::Evict, w);
        if (a.page == p) memo_served = true;
        break;
    }
  }
  if (!cache_.contains(p) && !memo_served)
    throw ProtocolViolation(alg_.name() + " left request unserved at t=" + std::to_string(t));
  return acts;
}

void Driver::feed_run(Time t, PageId p, Time count, const PredictionView& view) {
  feed(t, p, view);
  if (count > 1) {
    if (!cache_.contains(p))
      throw ProtocolViolation(alg_.name() + " must hold a repeated request resident");
    alg_.on_repeat_hits(t + 1, p, count - 1);
  }
}

CostLedger serve(OnlineAlgorithm& alg, const RequestSequence& seq,
                 const PredictionStream& predictions, const WeightTable& weights,
                 int k, ChargingMode mode) {
  StartInfo info{k, mode, &weights, seq.universe, &predictions, seq.length()};
  Driver driver(alg, info);
  for (Time t = 1; t <= seq.length(); t++) {
    PredictionView view{&predictions, predictions.prp_next(t)};
    driver.feed(t, seq.at(t), view);
  }
  return driver.take_ledger();
}

ServeTrace serve_traced(OnlineAlgorithm& alg, const RequestSequence& seq,
                        const PredictionStream& predictions, const WeightTable& weights,
                        int k, ChargingMode mode) {
  StartInfo info{k, mode, &weights, seq.universe, &predictions, seq.length()};
  Driver driver(alg, info);
  ServeTrace trace;
  trace.steps.resize((size_t)seq.length() + 1);
  trace.cache_after.resize((size_t)seq.length() + 1);
  for (Time t = 1; t <= seq.length(); t++) {
    PredictionView view{&predictions, predictions.prp_next(t)};
    trace.steps[(size_t)t] = driver.feed(t, seq.at(t), view);
    trace.cache_after[(size_t)t] = driver.cache().resident;
  }
  trace.ledger = driver.take_ledger();
  return trace;
}

}  // namespace wpage
