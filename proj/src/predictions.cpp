#include "wpage/predictions.hpp"

#include <random>
#include <set>
#include <unordered_map>

namespace wpage {

PrpAnnotation derive_perfect_prp(const RequestSequence& seq) {
  if (seq.empty()) throw std::invalid_argument("prp of empty sequence");
  const Time T = seq.length();
  PrpAnnotation a;
  a.next.assign((size_t)T + 1, 0);
  std::unordered_map<PageId, Time> seen;
  for (Time t = T; t >= 1; t--) {
    PageId p = seq.at(t);
    auto it = seen.find(p);
    a.next[(size_t)t] = it == seen.end() ? T + 1 : it->second;
    seen[p] = t;
  }
  return a;
}

LookaheadWindows derive_lookahead(const RequestSequence& seq, int ell) {
  if (ell < 1 || ell > seq.universe - 1)
    throw std::invalid_argument("lookahead ell must be in [1, n-1]");
  const Time T = seq.length();
  LookaheadWindows w;
  w.ell = ell;
  w.end.assign((size_t)T + 1, 0);
  for (Time t = 1; t <= T; t++) {
    std::set<PageId> distinct;
    Time e = t;
    for (Time u = t + 1; u <= T; u++) {
      distinct.insert(seq.at(u));
      e = u;
      if ((int)distinct.size() == ell) break;
    }
    w.end[(size_t)t] = e;
  }
  return w;
}

static SprpWindows sprp_from(const RequestSequence& seq, const PrpAnnotation& prp) {
  const Time T = seq.length();
  SprpWindows s;
  s.next = prp.next;
  s.end.assign((size_t)T + 1, 0);
  for (Time t = 1; t <= T; t++) {
    Time n = prp.at(t);
    s.end[(size_t)t] = n <= T ? n : T;
  }
  return s;
}

PredictionStream PredictionStream::from_sequence(RequestSequence a) {
  PredictionStream s;
  s.predicted = std::move(a);
  if (!s.predicted.empty()) {
    s.prp = derive_perfect_prp(s.predicted);
    s.sprp = sprp_from(s.predicted, s.prp);
  } else {
    s.prp.next.assign(1, 0);
    s.sprp.next.assign(1, 0);
    s.sprp.end.assign(1, 0);
  }
  return s;
}

PredictionStream derive_sprp(const RequestSequence& seq) {
  if (seq.empty()) throw std::invalid_argument("sprp of empty sequence");
  return PredictionStream::from_sequence(seq);
}

namespace {
// Seeded, toolchain-independent uniform draws.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  // uniform in [0, n)
  unsigned long long below(unsigned long long n) {
    unsigned long long limit = UINT64_MAX - UINT64_MAX % n;
    unsigned long long v;
    do {
      v = gen();
    } while (v >= limit);
    return v % n;
  }
  // Bernoulli(p) via 53-bit dyadic comparison
  bool chance(double p) {
    if (p <= 0) return false;
    if (p >= 1) return true;
    return (double)(gen() >> 11) < p * 9007199254740992.0;
  }
};
}  // namespace

RequestSequence perturb(const RequestSequence& seq, const NoiseSpec& noise,
                        unsigned long long seed) {
  auto check = [](double r, const char* what) {
    if (r < 0 || r > 1) throw std::invalid_argument(std::string("noise rate out of [0,1]: ") + what);
  };
  check(noise.substitution, "substitution");
  check(noise.insertion, "insertion");
  check(noise.deletion, "deletion");
  if (seq.universe <= 0) throw std::invalid_argument("perturb needs a declared universe");

  Rng rng(seed);
  RequestSequence out;
  out.universe = seq.universe;
  for (PageId p : seq.req) {
    if (rng.chance(noise.insertion))
      out.req.push_back((PageId)rng.below((unsigned long long)seq.universe));
    if (rng.chance(noise.deletion)) continue;
    if (rng.chance(noise.substitution))
      out.req.push_back((PageId)rng.below((unsigned long long)seq.universe));
    else
      out.req.push_back(p);
  }
  return out;
}

}  // namespace wpage
