#include "wpage/offline_opt.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "wpage/predictions.hpp"

namespace wpage {

namespace {

struct DpEntry {
  Rational cost;
  uint32_t prev{0};
  int8_t kind{0};  // 0 hit, 1 fetch, 2 fetch+evict, 3 memoryless
  int8_t evicted{-1};
};

using Layer = std::map<uint32_t, DpEntry>;

OptResult optimal_schedule(const RequestSequence& seq, const WeightTable& weights, int k,
                           ChargingMode mode, bool memoryless,
                           const std::set<PageId>& start_cache, const OptOptions& opts) {
  if (k < 1) throw std::invalid_argument("cache size must be positive");
  if ((int)start_cache.size() > k) throw std::invalid_argument("start cache over capacity");

  std::vector<PageId> pages(start_cache.begin(), start_cache.end());
  for (PageId p : seq.req)
    if (std::find(pages.begin(), pages.end(), p) == pages.end()) pages.push_back(p);
  std::sort(pages.begin(), pages.end());
  if ((int)pages.size() > opts.max_pages)
    throw SizeLimitError("instance exceeds the exact-DP page limit; use opt_plus1_lp for a bound");

  std::unordered_map<PageId, int> bit;
  for (size_t i = 0; i < pages.size(); i++) bit[pages[i]] = (int)i;

  const bool fetch_mode = mode == ChargingMode::FetchCharged;
  const Time T = seq.length();

  uint32_t start_mask = 0;
  for (PageId p : start_cache) start_mask |= 1u << bit[p];

  std::vector<Layer> layers((size_t)T + 1);
  layers[0][start_mask] = DpEntry{};

  auto relax = [](Layer& layer, uint32_t mask, const Rational& cost, uint32_t prev,
                  int8_t kind, int8_t evicted) {
    auto it = layer.find(mask);
    if (it == layer.end() || cost < it->second.cost)
      layer[mask] = DpEntry{cost, prev, kind, evicted};
  };

  for (Time t = 1; t <= T; t++) {
    PageId p = seq.at(t);
    int bp = bit[p];
    const Rational& wp = weights.at(p);
    Layer& next = layers[(size_t)t];
    for (const auto& [mask, entry] : layers[(size_t)t - 1]) {
      if (mask & (1u << bp)) {
        relax(next, mask, entry.cost, mask, 0, -1);
        continue;
      }
      if (memoryless) relax(next, mask, entry.cost + wp, mask, 3, -1);
      int count = __builtin_popcount(mask);
      uint32_t fetched = mask | (1u << bp);
      if (count < k) {
        relax(next, fetched, entry.cost + (fetch_mode ? wp : Rational(0)), mask, 1, -1);
      } else {
        for (int q = 0; q < (int)pages.size(); q++) {
          if (!(mask & (1u << q))) continue;
          Rational cost = entry.cost + (fetch_mode ? wp : weights.at(pages[(size_t)q]));
          relax(next, fetched & ~(1u << q), cost, mask, 2, (int8_t)q);
        }
      }
    }
  }

  const Layer& last = layers[(size_t)T];
  auto best = last.begin();
  for (auto it = last.begin(); it != last.end(); ++it)
    if (it->second.cost < best->second.cost) best = it;

  OptResult res;
  res.cost = T == 0 ? Rational(0) : best->second.cost;
  res.schedule.steps.assign((size_t)T + 1, StepActions{});
  if (T > 0) {
    uint32_t mask = best->first;
    for (Time t = T; t >= 1; t--) {
      const DpEntry& e = layers[(size_t)t].at(mask);
      PageId p = seq.at(t);
      StepActions& acts = res.schedule.steps[(size_t)t];
      switch (e.kind) {
        case 0:
          break;
        case 1:
          acts.actions.push_back({ActionKind::Fetch, p});
          break;
        case 2:
          acts.actions.push_back({ActionKind::Evict, pages[(size_t)e.evicted]});
          acts.actions.push_back({ActionKind::Fetch, p});
          break;
        case 3:
          acts.actions.push_back({ActionKind::Memoryless, p});
          break;
      }
      mask = e.prev;
    }
  }
  return res;
}

}  // namespace

OptResult opt_dp(const RequestSequence& seq, const WeightTable& weights, int k,
                 ChargingMode mode, const OptOptions& opts) {
  return optimal_schedule(seq, weights, k, mode, false, {}, opts);
}

long long belady(const RequestSequence& seq, int k) {
  if (k < 1) throw std::invalid_argument("cache size must be positive");
  if (seq.empty()) return 0;
  PrpAnnotation prp = derive_perfect_prp(seq);
  std::set<PageId> resident;
  std::map<PageId, Time> next_use;
  long long misses = 0;
  for (Time t = 1; t <= seq.length(); t++) {
    PageId p = seq.at(t);
    if (!resident.count(p)) {
      misses++;
      if ((int)resident.size() == k) {
        PageId victim = -1;
        Time farthest = -1;
        for (PageId q : resident) {
          Time nu = next_use[q];
          if (nu > farthest) {
            farthest = nu;
            victim = q;
          }
        }
        resident.erase(victim);
      }
      resident.insert(p);
    }
    next_use[p] = prp.at(t);
  }
  return misses;
}

long long belady(const RequestSequence& seq, const WeightTable& weights, int k) {
  for (PageId p : seq.req)
    if (weights.at(p) != Rational(1))
      throw std::invalid_argument("belady requires unit weights");
  return belady(seq, k);
}

OptResult opt_plus1_dp(const RequestSequence& seq, const WeightTable& weights, int k,
                       const OptOptions& opts) {
  return optimal_schedule(seq, weights, k, ChargingMode::EvictCharged, true, {}, opts);
}

LpInstance LpInstance::opt_plus1(const RequestSequence& seq, const WeightTable& weights, int k) {
  const Time T = seq.length();
  // x(i,j): page i evicted between its j-th and (j+1)-th request.
  std::map<std::pair<PageId, long long>, int> var_of;
  std::unordered_map<PageId, long long> count;
  LpInstance lp;
  for (Time t = 1; t <= T; t++) {
    PageId p = seq.at(t);
    long long j = ++count[p];
    var_of[{p, j}] = (int)lp.objective.size();
    lp.objective.push_back(weights.at(p));
  }
  const int nv = (int)lp.objective.size();

  std::unordered_map<PageId, long long> r;  // r(i,t) as t advances
  std::vector<PageId> requested;            // B(t) in first-touch order
  std::set<std::vector<int>> seen;          // row dedup on the variable set
  for (Time t = 1; t <= T; t++) {
    PageId p = seq.at(t);
    if (r.find(p) == r.end()) requested.push_back(p);
    r[p]++;
    long long rhs = (long long)requested.size() - k;
    if (rhs < 1) continue;
    std::vector<int> vars;
    for (PageId i : requested) vars.push_back(var_of.at({i, r[i]}));
    std::sort(vars.begin(), vars.end());
    if (!seen.insert(vars).second) continue;
    std::vector<Rational> row((size_t)nv, Rational(0));
    for (int v : vars) row[(size_t)v] = Rational(1);
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(Rational(rhs));
  }
  return lp;
}

Rational opt_plus1_lp(const RequestSequence& seq, const WeightTable& weights, int k) {
  LpInstance lp = LpInstance::opt_plus1(seq, weights, k);
  if (lp.num_rows() == 0) return Rational(0);
  return solve_box_covering_lp(lp.rows, lp.rhs, lp.objective).objective;
}

OptResult batch_optimal(const RequestSequence& batch, const std::set<PageId>& start_cache,
                        const WeightTable& weights, int k, bool memoryless,
                        ChargingMode mode, const OptOptions& opts) {
  return optimal_schedule(batch, weights, k, mode, memoryless, start_cache, opts);
}

}  // namespace wpage
