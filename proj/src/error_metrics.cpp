#include "wpage/error_metrics.hpp"

#include <algorithm>
#include <unordered_map>

namespace wpage {

IndexMaps index_maps(const RequestSequence& a, const RequestSequence& b) {
  const Time n = b.length(), m = a.length();
  IndexMaps maps;
  maps.prev.assign((size_t)n + 1, 0);
  maps.next.assign((size_t)n + 1, 0);
  maps.pnext.assign((size_t)n + 1, 0);

  std::unordered_map<PageId, Time> last;
  for (Time t = 1; t <= n; t++) {
    PageId p = b.at(t);
    auto it = last.find(p);
    maps.prev[(size_t)t] = it == last.end() ? 0 : it->second;
    last[p] = t;
  }
  std::unordered_map<PageId, Time> nxt;
  for (Time t = n; t >= 1; t--) {
    PageId p = b.at(t);
    auto it = nxt.find(p);
    maps.next[(size_t)t] = it == nxt.end() ? n + 1 : it->second;
    nxt[p] = t;
  }
  std::unordered_map<PageId, std::vector<Time>> occ;  // occurrences of each page in A
  for (Time i = 1; i <= m; i++) occ[a.at(i)].push_back(i);
  for (Time t = 1; t <= n; t++) {
    PageId p = b.at(t);
    auto it = occ.find(p);
    Time val = m + 1;
    if (it != occ.end()) {
      auto& v = it->second;
      auto pos = std::upper_bound(v.begin(), v.end(), t);
      if (pos != v.end()) val = *pos;
    }
    maps.pnext[(size_t)t] = val;
  }
  return maps;
}

Rational l1(const RequestSequence& a, const RequestSequence& b, const WeightTable& weights) {
  const Time m = a.length(), n = b.length();
  Rational sum;
  for (Time t = 1; t <= std::max(m, n); t++) {
    if (t > m)
      sum += weights.at(b.at(t));
    else if (t > n)
      sum += weights.at(a.at(t));
    else if (a.at(t) != b.at(t))
      sum += weights.at(a.at(t)) + weights.at(b.at(t));
  }
  return sum;
}

Rational lpd(const RequestSequence& a, const RequestSequence& b, const WeightTable& weights) {
  const Time n = b.length();
  IndexMaps maps = index_maps(a, b);
  Rational sum;
  for (Time t = 1; t <= n; t++) {
    long long diff = maps.next[(size_t)t] - maps.pnext[(size_t)t];
    if (diff < 0) diff = -diff;
    sum += weights.at(b.at(t)) * Rational(diff);
  }
  return sum;
}

namespace {

// The unique candidate partner of B_j in A: the earliest occurrence of the
// page in A strictly after prev_B(j) (a first occurrence in B may match a
// first occurrence in A). 0 when no occurrence exists.
struct Matchability {
  std::vector<Time> partner;    // 1-based over B; index into A or 0
  std::vector<int> fanin;       // per A position: |P(A_i)|
  std::vector<Time> latest;     // per A position: max P(A_i)

  bool edge(Time i, Time j, bool constrained) const {
    if (partner[(size_t)j] != i) return false;
    if (!constrained) return true;
    return fanin[(size_t)i] < 2 || latest[(size_t)i] == j;
  }
};

Matchability matchability(const RequestSequence& a, const RequestSequence& b) {
  const Time n = b.length(), m = a.length();
  Matchability mt;
  mt.partner.assign((size_t)n + 1, 0);
  mt.fanin.assign((size_t)m + 1, 0);
  mt.latest.assign((size_t)m + 1, 0);

  std::unordered_map<PageId, std::vector<Time>> occ;
  for (Time i = 1; i <= m; i++) occ[a.at(i)].push_back(i);
  std::unordered_map<PageId, Time> last;
  for (Time j = 1; j <= n; j++) {
    PageId p = b.at(j);
    Time prev = 0;
    if (auto it = last.find(p); it != last.end()) prev = it->second;
    last[p] = j;
    auto it = occ.find(p);
    if (it == occ.end()) continue;
    auto& v = it->second;
    auto pos = std::upper_bound(v.begin(), v.end(), prev);
    if (pos == v.end()) continue;
    Time i = *pos;
    mt.partner[(size_t)j] = i;
    mt.fanin[(size_t)i]++;
    mt.latest[(size_t)i] = std::max(mt.latest[(size_t)i], j);
  }
  return mt;
}

// f[x][y] = max matched weight over A(1..x) x B(1..y).
std::vector<std::vector<Rational>> matched_weight_dp(const RequestSequence& a,
                                                     const RequestSequence& b,
                                                     const WeightTable& weights,
                                                     const Matchability& mt,
                                                     bool constrained) {
  const Time m = a.length(), n = b.length();
  std::vector<std::vector<Rational>> f((size_t)m + 1,
                                       std::vector<Rational>((size_t)n + 1));
  for (Time x = 1; x <= m; x++) {
    for (Time y = 1; y <= n; y++) {
      Rational best = f[(size_t)x - 1][(size_t)y];
      if (f[(size_t)x][(size_t)y - 1] > best) best = f[(size_t)x][(size_t)y - 1];
      if (mt.edge(x, y, constrained)) {
        Rational take = f[(size_t)x - 1][(size_t)y - 1] + weights.at(b.at(y));
        if (take > best) best = take;
      }
      f[(size_t)x][(size_t)y] = best;
    }
  }
  return f;
}

Rational total_weight(const RequestSequence& s, const WeightTable& weights) {
  Rational t;
  for (PageId p : s.req) t += weights.at(p);
  return t;
}

}  // namespace

AlignmentResult led(const RequestSequence& a, const RequestSequence& b,
                    const WeightTable& weights, bool constrained) {
  const Time m = a.length(), n = b.length();
  Matchability mt = matchability(a, b);
  auto f = matched_weight_dp(a, b, weights, mt, constrained);

  AlignmentResult res;
  res.constrained = constrained;
  res.unmatched_weight =
      total_weight(a, weights) + total_weight(b, weights) - Rational(2) * f[(size_t)m][(size_t)n];

  // Deterministic reconstruction; among optimal matchings this prefers
  // taking a feasible pair as early as the backtrack allows.
  Time x = m, y = n;
  while (x > 0 && y > 0) {
    if (mt.edge(x, y, constrained) &&
        f[(size_t)x][(size_t)y] ==
            f[(size_t)x - 1][(size_t)y - 1] + weights.at(b.at(y))) {
      res.matched.push_back({x, y});
      x--;
      y--;
    } else if (f[(size_t)x][(size_t)y] == f[(size_t)x - 1][(size_t)y]) {
      x--;
    } else {
      y--;
    }
  }
  std::reverse(res.matched.begin(), res.matched.end());
  return res;
}

Rational led_value(const RequestSequence& a, const RequestSequence& b,
                   const WeightTable& weights, bool constrained) {
  return led(a, b, weights, constrained).unmatched_weight;
}

Rational led_subrange(const RequestSequence& a, const RequestSequence& b,
                      Time a1, Time a2, Time b1, Time b2,
                      const WeightTable& weights, bool constrained) {
  if (a1 > a2 + 1 || b1 > b2 + 1 || a1 < 1 || b1 < 1 || a2 > a.length() || b2 > b.length())
    throw std::invalid_argument("led_subrange: inverted or out-of-range subrange");
  RequestSequence sa = a.subrange(a1, a2);
  RequestSequence sb = b.subrange(b1, b2);
  return led_value(sa, sb, weights, constrained);
}

std::vector<Rational> led_prefix_values(const RequestSequence& a, const RequestSequence& b,
                                        const WeightTable& weights, bool constrained) {
  const Time m = a.length(), n = b.length();
  Matchability mt = matchability(a, b);
  auto f = matched_weight_dp(a, b, weights, mt, constrained);
  Rational wb = total_weight(b, weights);
  std::vector<Rational> vals((size_t)m + 1);
  Rational wa;
  vals[0] = wb;
  for (Time x = 1; x <= m; x++) {
    wa += weights.at(a.at(x));
    vals[(size_t)x] = wa + wb - Rational(2) * f[(size_t)x][(size_t)n];
  }
  return vals;
}

}  // namespace wpage
