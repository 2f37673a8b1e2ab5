#pragma once

#include <set>
#include <vector>

#include "wpage/core.hpp"
#include "wpage/simplex.hpp"

namespace wpage {

// Tag for the k+1 cache whose extra slot serves a request by fetching and
// immediately evicting; it never retains a page across steps.
struct MemorylessCacheModel {
  int normal_capacity{0};
};

struct OptOptions {
  int max_pages = 14;  // relevant-page limit for the exact state-space DP
};

struct Schedule {
  std::vector<StepActions> steps;  // 1-based; steps[0] unused
};

struct OptResult {
  Rational cost;
  Schedule schedule;
};

// Exact offline optimum by DP over (time, resident set). Throws
// SizeLimitError above the page limit; use opt_plus1_lp for a bound there.
OptResult opt_dp(const RequestSequence& seq, const WeightTable& weights, int k,
                 ChargingMode mode, const OptOptions& opts = {});

// Farthest-in-future eviction; returns the miss count. Optimal only for
// unit weights.
long long belady(const RequestSequence& seq, int k);
long long belady(const RequestSequence& seq, const WeightTable& weights, int k);

// Exact optimum with k normal slots plus one memoryless slot, eviction
// charging (a memoryless serve of p charges w(p)).
OptResult opt_plus1_dp(const RequestSequence& seq, const WeightTable& weights, int k,
                       const OptOptions& opts = {});

// Covering-LP relaxation of the memoryless-slot optimum.
struct LpInstance {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;

  int num_vars() const { return (int)objective.size(); }
  int num_rows() const { return (int)rows.size(); }

  static LpInstance opt_plus1(const RequestSequence& seq, const WeightTable& weights, int k);
};

Rational opt_plus1_lp(const RequestSequence& seq, const WeightTable& weights, int k);

// Optimal service of one batch from a given starting cache; the schedule is
// indexed by batch position.
OptResult batch_optimal(const RequestSequence& batch, const std::set<PageId>& start_cache,
                        const WeightTable& weights, int k, bool memoryless,
                        ChargingMode mode, const OptOptions& opts = {});

}  // namespace wpage
