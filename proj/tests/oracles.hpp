#pragma once

// Test-only oracles. Each one is an independent route to a value the
// library computes some cleverer way: plain recursion instead of layered
// DP, subset enumeration instead of alignment DP. They share no code with
// the implementations they check.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "wpage/core.hpp"

namespace oracles {

using namespace wpage;

// Exhaustive recursion over every serving choice.
inline std::optional<Rational> brute_opt_rec(const RequestSequence& seq, const WeightTable& w,
                                             int k, ChargingMode mode, bool memoryless,
                                             Time t, std::set<PageId> cache) {
  if (t > seq.length()) return Rational(0);
  PageId p = seq.at(t);
  if (cache.count(p)) return brute_opt_rec(seq, w, k, mode, memoryless, t + 1, cache);

  const bool fetch = mode == ChargingMode::FetchCharged;
  std::optional<Rational> best;
  auto consider = [&](const Rational& step_cost, const std::set<PageId>& next_cache) {
    auto rest = brute_opt_rec(seq, w, k, mode, memoryless, t + 1, next_cache);
    if (!rest) return;
    Rational total = step_cost + *rest;
    if (!best || total < *best) best = total;
  };

  if (memoryless) consider(w.at(p), cache);
  if ((int)cache.size() < k) {
    auto next = cache;
    next.insert(p);
    consider(fetch ? w.at(p) : Rational(0), next);
  } else {
    for (PageId q : cache) {
      auto next = cache;
      next.erase(q);
      next.insert(p);
      consider(fetch ? w.at(p) : w.at(q), next);
    }
  }
  return best;
}

inline Rational brute_opt(const RequestSequence& seq, const WeightTable& w, int k,
                          ChargingMode mode, bool memoryless = false,
                          std::set<PageId> start = {}) {
  auto r = brute_opt_rec(seq, w, k, mode, memoryless, 1, std::move(start));
  REQUIRE(r.has_value());
  return *r;
}

// Literal evaluation of the matchability definition: the partner of B_j is
// the earliest occurrence of its page in A strictly after the previous
// occurrence of the page in B.
inline std::vector<Time> brute_partners(const RequestSequence& a, const RequestSequence& b) {
  std::vector<Time> partner((size_t)b.length() + 1, 0);
  for (Time j = 1; j <= b.length(); j++) {
    Time prev = 0;
    for (Time j2 = j - 1; j2 >= 1; j2--) {
      if (b.at(j2) == b.at(j)) {
        prev = j2;
        break;
      }
    }
    for (Time i = prev + 1; i <= a.length(); i++) {
      if (a.at(i) == b.at(j)) {
        partner[(size_t)j] = i;
        break;
      }
    }
  }
  return partner;
}

// Minimum unmatched weight over every feasible matching, by enumerating
// which input positions participate.
inline Rational brute_led(const RequestSequence& a, const RequestSequence& b,
                          const WeightTable& w, bool constrained) {
  auto partner = brute_partners(a, b);
  const Time n = b.length();

  std::map<Time, int> fanin;
  std::map<Time, Time> latest;
  for (Time j = 1; j <= n; j++) {
    if (partner[(size_t)j] == 0) continue;
    fanin[partner[(size_t)j]]++;
    latest[partner[(size_t)j]] = std::max(latest[partner[(size_t)j]], j);
  }

  Rational total;
  for (PageId p : a.req) total += w.at(p);
  for (PageId p : b.req) total += w.at(p);

  Rational best_matched;
  // subsets of B positions; n <= ~14 in callers
  for (unsigned long long mask = 0; mask < (1ull << n); mask++) {
    Time last_i = 0;
    Rational matched;
    bool ok = true;
    for (Time j = 1; j <= n && ok; j++) {
      if (!(mask & (1ull << (j - 1)))) continue;
      Time i = partner[(size_t)j];
      if (i == 0 || i <= last_i) {
        ok = false;
        break;
      }
      if (constrained && fanin[i] >= 2 && latest[i] != j) {
        ok = false;
        break;
      }
      last_i = i;
      matched += w.at(b.at(j));
    }
    if (ok && matched > best_matched) best_matched = matched;
  }
  return total - Rational(2) * best_matched;
}

struct TestRng {
  std::mt19937_64 gen;
  explicit TestRng(unsigned long long seed) : gen(seed) {}
  unsigned long long below(unsigned long long n) {
    unsigned long long limit = UINT64_MAX - UINT64_MAX % n;
    unsigned long long v;
    do {
      v = gen();
    } while (v >= limit);
    return v % n;
  }
  long long range(long long lo, long long hi) {
    return lo + (long long)below((unsigned long long)(hi - lo + 1));
  }
};

inline RequestSequence random_seq(TestRng& rng, int universe, long long len) {
  std::vector<PageId> req;
  for (long long i = 0; i < len; i++) req.push_back((PageId)rng.below((unsigned long long)universe));
  return RequestSequence::of(std::move(req), universe);
}

inline WeightTable random_weights(TestRng& rng, int universe) {
  WeightTable w;
  for (int i = 0; i < universe; i++) w.w.push_back(Rational(1ll << rng.below(5)));
  return w;
}

}  // namespace oracles
