#pragma once

// Small statistics helpers for the acceptance suite.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace stats {

inline std::vector<double> ranks(const std::vector<double>& xs) {
  std::vector<size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  std::vector<double> r(xs.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) j++;
    double avg = (double)(i + j) / 2.0 + 1.0;  // average rank for ties
    for (size_t t = i; t <= j; t++) r[order[t]] = avg;
    i = j + 1;
  }
  return r;
}

inline double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  double n = (double)xs.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < xs.size(); i++) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); i++) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman_rho(const std::vector<double>& xs, const std::vector<double>& ys) {
  return pearson(ranks(xs), ranks(ys));
}

// Exact one-sided permutation p-value: probability under the null of a
// Spearman correlation at most the observed one. Enumerates all n!
// permutations; intended for small n.
inline double spearman_pvalue_le(const std::vector<double>& xs, const std::vector<double>& ys) {
  double observed = spearman_rho(xs, ys);
  std::vector<double> perm = ys;
  std::sort(perm.begin(), perm.end());
  long long total = 0, at_most = 0;
  do {
    total++;
    if (spearman_rho(xs, perm) <= observed + 1e-12) at_most++;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return (double)at_most / (double)total;
}

}  // namespace stats
