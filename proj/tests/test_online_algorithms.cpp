#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "wpage/algorithms.hpp"
#include "wpage/error_metrics.hpp"
#include "wpage/offline_opt.hpp"

using namespace wpage;

namespace {
RequestSequence rs(std::vector<PageId> v, int universe = -1) {
  return RequestSequence::of(std::move(v), universe);
}

struct Sampled {
  RequestSequence input;
  WeightTable weights;
  int k;
};

Sampled sample(oracles::TestRng& rng, int n_max = 6, long long t_max = 30, int k_max = 3) {
  int n = (int)rng.range(2, n_max);
  Sampled s;
  s.k = (int)rng.range(1, std::min(k_max, n - 1) < 1 ? 1 : std::min(k_max, n - 1));
  s.input = oracles::random_seq(rng, n, rng.range(3, t_max));
  s.weights = oracles::random_weights(rng, n);
  return s;
}
}  // namespace

TEST_CASE("lru hand trace") {
  auto seq = rs({0, 1, 2, 0});
  auto stream = PredictionStream::from_sequence(seq);
  LruAlgorithm lru;
  CostLedger ledger = serve(lru, seq, stream, WeightTable::unit(3), 2, ChargingMode::FetchCharged);
  CHECK(ledger.total == Rational(4));
}

TEST_CASE("alg_i traces and invariants") {
  // universe {a_0,a_1,a_2}, k=2: ALG_1 evicts only a_1 or a_0
  auto seq = rs({0, 1, 2, 0, 1}, 3);
  auto stream = PredictionStream::from_sequence(seq);
  AlgIAlgorithm alg1(1);
  ServeTrace trace =
      serve_traced(alg1, seq, stream, WeightTable::geometric(3, 2), 2, ChargingMode::FetchCharged);
  for (const auto& step : trace.steps)
    for (const Action& a : step.actions)
      if (a.kind == ActionKind::Evict) CHECK((a.page == 0 || a.page == 1));

  AlgIAlgorithm bad(1);
  auto outside = rs({0, 3}, 4);
  auto stream2 = PredictionStream::from_sequence(outside);
  CHECK_THROWS_AS(
      (void)serve(bad, outside, stream2, WeightTable::unit(4), 2, ChargingMode::FetchCharged),
      std::invalid_argument);
}

TEST_CASE("static: perfect predictions on a forced-miss instance match opt") {
  auto seq = rs({0, 1, 0, 1});
  WeightTable w{{Rational(1), Rational(2)}};
  auto stream = PredictionStream::from_sequence(seq);
  auto alg = make_static();
  CostLedger ledger = serve(*alg, seq, stream, w, 1, ChargingMode::FetchCharged);
  CHECK(ledger.total == Rational(6));
  CHECK(ledger.total == opt_dp(seq, w, 1, ChargingMode::FetchCharged).cost);
  CHECK(alg->batches().size() == 2);
  CHECK(alg->batches()[0] == std::pair<Time, Time>{1, 3});
  CHECK(alg->batches()[1] == std::pair<Time, Time>{4, 4});
}

TEST_CASE("static: each page once with a big cache is all compulsory fetches") {
  auto seq = rs({0, 1, 2, 3});
  WeightTable w = WeightTable::geometric(4, 2);
  auto stream = PredictionStream::from_sequence(seq);
  auto alg = make_static();
  CostLedger ledger = serve(*alg, seq, stream, w, 4, ChargingMode::FetchCharged);
  CHECK(ledger.total == w.at(0) + w.at(1) + w.at(2) + w.at(3));
}

TEST_CASE("static is 2-competitive under perfect predictions, eviction charging") {
  oracles::TestRng rng(71);
  for (int trial = 0; trial < 200; trial++) {
    Sampled s = sample(rng);
    auto stream = PredictionStream::from_sequence(s.input);
    auto alg = make_static();
    Rational cost = serve(*alg, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    Rational opt = opt_dp(s.input, s.weights, s.k, ChargingMode::EvictCharged).cost;
    CHECK(cost <= Rational(2) * opt);
  }
}

TEST_CASE("static batches are nested as page sets under perfect predictions") {
  oracles::TestRng rng(73);
  for (int trial = 0; trial < 100; trial++) {
    Sampled s = sample(rng);
    auto stream = PredictionStream::from_sequence(s.input);
    auto alg = make_static();
    (void)serve(*alg, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged);
    const auto& batches = alg->batches();
    for (size_t i = 0; i + 2 < batches.size(); i++) {  // nesting through batch m-1
      std::set<PageId> cur, nxt;
      for (Time t = batches[i].first; t <= batches[i].second; t++) cur.insert(s.input.at(t));
      for (Time t = batches[i + 1].first; t <= batches[i + 1].second; t++)
        nxt.insert(s.input.at(t));
      for (PageId p : cur) CHECK(nxt.count(p));
    }
  }
}

TEST_CASE("follow: perfect predictions reproduce static exactly") {
  oracles::TestRng rng(79);
  for (int trial = 0; trial < 50; trial++) {
    Sampled s = sample(rng);
    auto stream = PredictionStream::from_sequence(s.input);
    auto foll = make_algorithm("follow");
    auto stat = make_static();
    Rational f = serve(*foll, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    Rational st = serve(*stat, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    CHECK(f == st);
  }
}

TEST_CASE("follow: bound 2*opt + 6*l1 under substitution noise") {
  oracles::TestRng rng(83);
  for (int trial = 0; trial < 150; trial++) {
    Sampled s = sample(rng);
    NoiseSpec noise{0.25, 0, 0};
    RequestSequence a = perturb(s.input, noise, 1000 + (unsigned long long)trial);
    auto stream = PredictionStream::from_sequence(a);
    auto foll = make_algorithm("follow");
    Rational cost = serve(*foll, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    Rational opt = opt_dp(s.input, s.weights, s.k, ChargingMode::EvictCharged).cost;
    Rational err = l1(a, s.input, s.weights);
    CHECK(cost <= Rational(2) * opt + Rational(6) * err);
  }
}

TEST_CASE("follow: fully disjoint predictions stay under the trivial ceiling") {
  auto seq = rs({0, 1, 0, 1}, 4);
  auto a = rs({2, 3, 2, 3}, 4);
  WeightTable w = WeightTable::unit(4);
  auto stream = PredictionStream::from_sequence(a);
  auto foll = make_algorithm("follow");
  ServeTrace trace = serve_traced(*foll, seq, stream, w, 1, ChargingMode::EvictCharged);
  Rational requests_weight;
  for (PageId p : seq.req) requests_weight += w.at(p);
  Rational evictions_on_a;
  for (const auto& step : trace.steps)
    for (const Action& act : step.actions)
      if (act.kind == ActionKind::Evict) evictions_on_a += w.at(act.page);
  CHECK(trace.ledger.total <= requests_weight + evictions_on_a);
}

TEST_CASE("idle: a single batch equals the memoryless optimum") {
  // one batch: first page recurs at the very end
  auto seq = rs({0, 1, 2, 1, 0}, 3);
  WeightTable w{{Rational(1), Rational(2), Rational(4)}};
  auto stream = PredictionStream::from_sequence(seq);
  auto idle = make_idle();
  Rational cost = serve(*idle, seq, stream, w, 1, ChargingMode::EvictCharged).total;
  CHECK(idle->batches().size() == 1);
  CHECK(cost == opt_plus1_dp(seq, w, 1).cost);
}

TEST_CASE("idle: everything fits, eviction charging, zero cost") {
  auto seq = rs({0, 1, 0, 1, 0}, 2);
  auto stream = PredictionStream::from_sequence(seq);
  auto idle = make_idle();
  CHECK(serve(*idle, seq, stream, WeightTable::unit(2), 2, ChargingMode::EvictCharged).total ==
        Rational(0));
}

TEST_CASE("idle stays within 3x of the memoryless optimum on its own stream") {
  oracles::TestRng rng(89);
  for (int trial = 0; trial < 120; trial++) {
    Sampled s = sample(rng, 5, 24, 3);
    auto stream = PredictionStream::from_sequence(s.input);
    auto idle = make_idle();
    Rational cost = serve(*idle, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    Rational plus1 = opt_plus1_dp(s.input, s.weights, s.k).cost;
    CHECK(cost <= Rational(3) * plus1);
  }
}

TEST_CASE("learn: perfect predictions imitate idle step by step") {
  oracles::TestRng rng(97);
  for (int trial = 0; trial < 60; trial++) {
    Sampled s = sample(rng, 5, 24, 3);
    auto stream = PredictionStream::from_sequence(s.input);
    LearnAlgorithm learn;
    Rational learn_cost =
        serve(learn, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    auto idle = make_idle();
    Rational idle_cost =
        serve(*idle, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    CHECK(learn_cost == idle_cost);
    CHECK(learn.step3a_count() == s.input.length());
    CHECK(learn.imitated_through() == s.input.length());
  }
}

TEST_CASE("learn: disjoint predictions never fire the imitation step") {
  auto seq = rs({0, 1, 0, 1, 0, 1}, 4);
  auto a = rs({2, 3, 2, 3, 2, 3}, 4);
  WeightTable w = WeightTable::unit(4);
  auto stream = PredictionStream::from_sequence(a);
  LearnAlgorithm learn;
  Rational cost = serve(learn, seq, stream, w, 1, ChargingMode::EvictCharged).total;
  CHECK(learn.step3a_count() == 0);
  Rational err = led_value(a, seq, w, true);
  CHECK(cost <= Rational(6) * err);
}

TEST_CASE("learn: cost within idle + 12 * constrained led across noise levels") {
  oracles::TestRng rng(101);
  for (int trial = 0; trial < 150; trial++) {
    Sampled s = sample(rng, 5, 24, 3);
    NoiseSpec noise{0.15, 0.1, 0.1};
    RequestSequence a = trial % 3 == 0 ? s.input
                                       : perturb(s.input, noise, 5000 + (unsigned long long)trial);
    auto stream = PredictionStream::from_sequence(a);
    LearnAlgorithm learn;
    Rational cost = serve(learn, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    auto idle = make_idle();
    Rational idle_cost = a.empty()
                             ? Rational(0)
                             : serve(*idle, a, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    Rational err = led_value(a, s.input, s.weights, true);
    CHECK(cost <= idle_cost + Rational(12) * err);
  }
}

TEST_CASE("learn: extreme insertion and deletion noise keeps the bound and protocol") {
  oracles::TestRng rng(107);
  for (int trial = 0; trial < 80; trial++) {
    Sampled s = sample(rng, 5, 30, 3);
    NoiseSpec noise = trial % 2 == 0 ? NoiseSpec{0.2, 0.5, 0.0} : NoiseSpec{0.2, 0.0, 0.5};
    RequestSequence a = perturb(s.input, noise, 9000 + (unsigned long long)trial);
    auto stream = PredictionStream::from_sequence(a);
    LearnAlgorithm learn;
    Rational cost = serve(learn, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    auto idle = make_idle();
    Rational idle_cost = a.empty()
                             ? Rational(0)
                             : serve(*idle, a, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    Rational err = led_value(a, s.input, s.weights, true);
    CHECK(cost <= idle_cost + Rational(12) * err);
  }
}

TEST_CASE("static: degrades to demand serving when the stream runs out") {
  auto seq = rs({0, 1, 0, 1, 2, 0}, 3);
  auto short_pred = rs({0, 1, 0}, 3);  // covers only the first three steps
  WeightTable w{{Rational(1), Rational(2), Rational(4)}};
  auto stream = PredictionStream::from_sequence(short_pred);
  auto alg = make_static();
  CostLedger ledger = serve(*alg, seq, stream, w, 2, ChargingMode::FetchCharged);
  CHECK(ledger.total > Rational(0));  // every request still served
}

TEST_CASE("learn: empty prediction sequence serves everything through the spare slot") {
  auto seq = rs({0, 1, 2, 0, 1}, 3);
  WeightTable w{{Rational(1), Rational(2), Rational(4)}};
  PredictionStream empty = PredictionStream::from_sequence(RequestSequence{{}, 3});
  LearnAlgorithm learn;
  Rational cost = serve(learn, seq, empty, w, 2, ChargingMode::EvictCharged).total;
  CHECK(learn.step3a_count() == 0);
  CHECK(cost <= Rational(12) * led_value(RequestSequence{{}, 3}, seq, w, true));
}

TEST_CASE("follow: insertion and deletion noise, unequal lengths") {
  oracles::TestRng rng(113);
  for (int trial = 0; trial < 120; trial++) {
    Sampled s = sample(rng);
    NoiseSpec noise = trial % 2 == 0 ? NoiseSpec{0.1, 0.4, 0.0} : NoiseSpec{0.1, 0.0, 0.4};
    RequestSequence a = perturb(s.input, noise, 7000 + (unsigned long long)trial);
    auto stream = PredictionStream::from_sequence(a);
    auto foll = make_algorithm("follow");
    Rational cost = serve(*foll, s.input, stream, s.weights, s.k, ChargingMode::EvictCharged).total;
    Rational opt = opt_dp(s.input, s.weights, s.k, ChargingMode::EvictCharged).cost;
    Rational err = l1(a, s.input, s.weights);
    CHECK(cost <= Rational(2) * opt + Rational(6) * err);
  }
}

TEST_CASE("algorithm factory") {
  CHECK(make_algorithm("lru")->name() == "lru");
  CHECK(make_algorithm("alg_i:3")->name() == "alg_i:3");
  CHECK_THROWS_AS((void)make_algorithm("nope"), std::invalid_argument);
}
