#pragma once

#include <utility>
#include <vector>

#include "wpage/core.hpp"

namespace wpage {

// prev/next index over the input sequence B, pnext from B positions into
// the prediction sequence A. Sentinels: prev 0, next n+1, pnext m+1.
struct IndexMaps {
  std::vector<Time> prev;   // 1-based over B
  std::vector<Time> next;   // 1-based over B
  std::vector<Time> pnext;  // 1-based over B, values index A
};

IndexMaps index_maps(const RequestSequence& a, const RequestSequence& b);

// Positional weighted mismatch. Positions past the shorter sequence count
// the present element's weight alone.
Rational l1(const RequestSequence& a, const RequestSequence& b, const WeightTable& weights);

// Sum over input positions of w(B_i) * |next(i) - pnext(i)|.
Rational lpd(const RequestSequence& a, const RequestSequence& b, const WeightTable& weights);

struct AlignmentResult {
  std::vector<std::pair<Time, Time>> matched;  // (i into A, j into B), increasing
  Rational unmatched_weight;
  bool constrained{false};
};

// Minimum total weight of unmatched elements over matchings where
// A_i = B_j may pair only when A_i is the earliest occurrence of the page
// in A after the previous occurrence of the page in B, and edges never
// cross. The constrained variant additionally forces an A element with
// several candidate partners to take the latest-arriving one.
AlignmentResult led(const RequestSequence& a, const RequestSequence& b,
                    const WeightTable& weights, bool constrained);

Rational led_value(const RequestSequence& a, const RequestSequence& b,
                   const WeightTable& weights, bool constrained);

// led over A[a1..a2] x B[b1..b2] with indices re-anchored to the subrange;
// positions outside are invisible to the matching rule.
Rational led_subrange(const RequestSequence& a, const RequestSequence& b,
                      Time a1, Time a2, Time b1, Time b2,
                      const WeightTable& weights, bool constrained);

// vals[x] = led(A(1..x), B) for x = 0..|A|, one DP pass. Used by the
// incremental inequality scan in the learn algorithm.
std::vector<Rational> led_prefix_values(const RequestSequence& a, const RequestSequence& b,
                                        const WeightTable& weights, bool constrained);

}  // namespace wpage
