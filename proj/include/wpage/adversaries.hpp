#pragma once

#include <functional>
#include <vector>

#include "wpage/core.hpp"
#include "wpage/predictions.hpp"

namespace wpage {

// Adversary streams are run-length encoded: block fillers can span
// astronomically many identical requests (the randomized generator's
// timeline reaches ~base^k), so nothing here materializes per-request
// storage.
struct Run {
  PageId page;
  Time begin;  // inclusive, 1-based
  Time end;    // inclusive
};

struct RunSequence {
  std::vector<Run> runs;
  int universe{0};

  Time total_length() const { return runs.empty() ? 0 : runs.back().end; }
  // Dense expansion for tests and file output; throws over the limit.
  RequestSequence to_dense(Time limit = 2000000) const;
  // Adjacent-duplicate-collapsed sequence; offline optimum is invariant
  // under this collapse.
  RequestSequence dedup() const;
};

struct BlockRecord {
  int level{0};
  bool regular{true};
  Time t_begin{0}, t_end{0};
  std::vector<Time> u_after;       // u values after the block's bookkeeping update
  size_t run_begin{0}, run_end{0}; // half-open indices into RunSequence::runs
};

struct AdversaryResult {
  RunSequence stream;
  std::vector<BlockRecord> blocks;
  // Per run: the generator's committed next-arrival prediction for the
  // run's final element. Inside a run every prediction is the successor
  // position by construction.
  std::vector<Time> committed_next;
  WeightTable weights;  // w(a_i) = c^i over the universe {a_0..a_k}
  long long c{2};
  int k{0};
  std::vector<CostLedger> ledgers;  // one per driven algorithm (may be empty)
};

// Closed-loop generator: before each block it inspects the first
// algorithm's cache for the largest absent page index, applies the
// level-counter bump, and emits the block; remaining algorithms are fed
// the same stream as passive observers. Emitted predictions are committed
// at emission time and verifiable post hoc.
AdversaryResult det_prp_adversary(const std::vector<OnlineAlgorithm*>& algorithms,
                                  int k, long long c, int num_blocks, ChargingMode mode);

// Oblivious seeded generator drawing block levels from
// P[l=j] = (c-1)/c^(j+1) (j < k), P[l=k] = c^-k, with the same counter
// bump mechanism against a harmonic-scaled threshold.
AdversaryResult rand_prp_generator(int k, long long c, int num_blocks,
                                   unsigned long long seed);

// Exact level distribution of the randomized generator before bumping.
std::vector<Rational> rand_level_pmf(int k, long long c);

// Drive one more algorithm over a recorded stream.
CostLedger replay_stream(const AdversaryResult& adv, OnlineAlgorithm& alg, ChargingMode mode);

// The generator's online predictions as a dense annotation: successor
// positions inside runs, committed next arrivals at run ends (trailing
// commitments may point past a truncated stream).
PrpAnnotation committed_prp_annotation(const AdversaryResult& adv);

// Every committed prediction whose page recurs matches the realized next
// occurrence (trailing commitments are unverifiable under truncation).
bool prp_predictions_consistent(const AdversaryResult& adv);

// Every block is a contiguous gapless sweep a_0, a_1, ..., ending with a
// single a_level.
bool blocks_contiguous(const AdversaryResult& adv);

Rational block_cost(const CostLedger& ledger, const BlockRecord& block);

// Inserts pads_per_gap = n_total - k - 1 fresh low-weight pages between
// every two consecutive requests, shrinking any lookahead's effective
// distinct-page budget by that amount.
struct PaddedInstance {
  RequestSequence seq;
  WeightTable weights;
  int pads_per_gap{0};

  int effective_lookahead(int ell) const { return ell - pads_per_gap; }
};

PaddedInstance lookahead_padding(const RequestSequence& seq, const WeightTable& weights,
                                 int n_total, int k, const Rational& eps);

// S_0 = a_0 a_0; S_i = L * S_{i-1} + a_i with L = ceil(2 c k' H_k') + 1;
// result is M concatenated copies of S_{k'}.
RequestSequence s_string(int k_prime, long long c, int m_copies);

// Stress-instance helper: insert a fresh page of weight 1/v before the
// given (1-based, pre-insertion) positions.
struct InjectedInstance {
  RequestSequence seq;
  WeightTable weights;
  PageId page_b{0};
};

InjectedInstance inject_page_b(const RequestSequence& seq, const WeightTable& weights,
                               const std::vector<Time>& positions, long long v = 1000000);

Rational harmonic(int k);

}  // namespace wpage
