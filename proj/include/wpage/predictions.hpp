#pragma once

#include <vector>

#include "wpage/core.hpp"

namespace wpage {

// next_time(t) = first time after t at which the page requested at t is
// requested again; T+1 when it never recurs.
struct PrpAnnotation {
  std::vector<Time> next;  // 1-based; next[0] unused

  Time at(Time t) const { return next[(size_t)t]; }
  Time horizon() const { return (Time)next.size() - 1; }
};

PrpAnnotation derive_perfect_prp(const RequestSequence& seq);

// Window at t: the minimal future prefix (t, end(t)] containing ell
// distinct pages, or the whole remainder when fewer remain.
struct LookaheadWindows {
  int ell{0};
  std::vector<Time> end;  // 1-based inclusive end; end[t] == t means empty

  Time window_end(Time t) const { return end[(size_t)t]; }
};

LookaheadWindows derive_lookahead(const RequestSequence& seq, int ell);

// Window at t: all requests strictly after t through the next request of
// the page requested at t; when that page never recurs the window runs to
// the end of the sequence.
struct SprpWindows {
  std::vector<Time> next;  // as PrpAnnotation
  std::vector<Time> end;   // inclusive window end; end[t] == t means empty

  Time window_end(Time t) const { return end[(size_t)t]; }
};

// A full predicted sequence plus the per-model views derived from it.
struct PredictionStream {
  RequestSequence predicted;  // the sequence A
  PrpAnnotation prp;
  SprpWindows sprp;

  Time length() const { return predicted.length(); }
  // PRP next-arrival for position t of the predicted sequence (0 when the
  // stream does not reach t).
  Time prp_next(Time t) const {
    if (t < 1 || t > length()) return 0;
    return prp.at(t);
  }
  Time sprp_end(Time t) const { return sprp.window_end(t); }

  static PredictionStream from_sequence(RequestSequence a);
};

// Perfect SPRP predictions: A equals the input sequence.
PredictionStream derive_sprp(const RequestSequence& seq);

struct NoiseSpec {
  double substitution{0};
  double insertion{0};
  double deletion{0};
};

// Seeded perturbation of a request sequence; substitute pages are drawn
// uniformly over the declared universe. Identity when all rates are zero.
RequestSequence perturb(const RequestSequence& seq, const NoiseSpec& noise,
                        unsigned long long seed);

}  // namespace wpage
