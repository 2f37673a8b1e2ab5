#include "wpage/adversaries.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace wpage {

RequestSequence RunSequence::to_dense(Time limit) const {
  if (total_length() > limit)
    throw SizeLimitError("run sequence too long to materialize densely");
  RequestSequence seq;
  seq.universe = universe;
  for (const Run& r : runs)
    for (Time t = r.begin; t <= r.end; t++) seq.req.push_back(r.page);
  return seq;
}

RequestSequence RunSequence::dedup() const {
  RequestSequence seq;
  seq.universe = universe;
  for (const Run& r : runs)
    if (seq.req.empty() || seq.req.back() != r.page) seq.req.push_back(r.page);
  return seq;
}

Rational harmonic(int k) {
  Rational h;
  for (int i = 1; i <= k; i++) h += Rational(1, i);
  return h;
}

namespace {

long long ceil_rational(const Rational& r) {
  return (r.num() + r.den() - 1) / r.den();  // positive arguments only
}

long long ipow(long long base, int exp) {
  long long v = 1;
  for (int i = 0; i < exp; i++) {
    if (v > (long long)2e15 / base) throw std::invalid_argument("adversary timeline overflow");
    v *= base;
  }
  return v;
}

struct GenState {
  std::vector<Time> u;
  std::vector<long long> y;
  Time t{0};
};

AdversaryResult generate(int k, long long c, long long base, long long threshold,
                         int num_blocks,
                         const std::function<int(const CacheState*)>& next_level,
                         const std::vector<OnlineAlgorithm*>& algorithms,
                         ChargingMode mode) {
  if (k < 1) throw std::invalid_argument("adversary needs k >= 1");
  if (c < 2) throw std::invalid_argument("adversary needs c >= 2");

  AdversaryResult res;
  res.k = k;
  res.c = c;
  res.weights = WeightTable::geometric(k + 1, c);
  res.stream.universe = k + 1;

  std::vector<std::unique_ptr<Driver>> drivers;
  StartInfo info{k, mode, &res.weights, k + 1, nullptr, 0};
  for (OnlineAlgorithm* alg : algorithms) drivers.emplace_back(new Driver(*alg, info));

  GenState st;
  st.u.resize((size_t)k + 1);
  st.y.assign((size_t)k + 1, 0);
  for (int i = 0; i <= k; i++) st.u[(size_t)i] = ipow(base, i);

  for (int b = 0; b < num_blocks; b++) {
    for (int i = 0; i < k; i++)
      if (!(st.u[(size_t)i] < st.u[(size_t)i + 1]))
        throw ProtocolViolation("adversary invariant broken: u values not increasing");
    if (st.u[0] != st.t + 1)
      throw ProtocolViolation("adversary invariant broken: next block does not start at t+1");

    int level = next_level(drivers.empty() ? nullptr : &drivers[0]->cache());
    bool regular = true;
    while (level < k && st.y[(size_t)level] >= threshold) {
      level++;
      regular = false;
    }

    BlockRecord record;
    record.level = level;
    record.regular = regular;
    record.t_begin = st.t + 1;
    record.run_begin = res.stream.runs.size();

    Time block_end = st.u[(size_t)level];
    for (int j = 0; j <= level; j++) {
      Time rb = st.u[(size_t)j];
      Time re = j < level ? st.u[(size_t)j + 1] - 1 : st.u[(size_t)j];
      res.stream.runs.push_back({j, rb, re});
      res.committed_next.push_back(block_end + ipow(base, j));
      Time first_pred = re > rb ? rb + 1 : res.committed_next.back();
      PredictionView view{nullptr, first_pred};
      for (auto& d : drivers) d->feed_run(rb, j, re - rb + 1, view);
    }
    st.t = block_end;
    for (int j = 0; j <= level; j++) st.u[(size_t)j] = st.t + ipow(base, j);
    for (int j = 0; j < level; j++) st.y[(size_t)j] = 0;
    if (level < k) st.y[(size_t)level]++;

    record.t_end = st.t;
    record.u_after = st.u;
    record.run_end = res.stream.runs.size();
    res.blocks.push_back(std::move(record));
  }

  for (auto& d : drivers) res.ledgers.push_back(d->take_ledger());
  return res;
}

}  // namespace

AdversaryResult det_prp_adversary(const std::vector<OnlineAlgorithm*>& algorithms,
                                  int k, long long c, int num_blocks, ChargingMode mode) {
  if (algorithms.empty())
    throw std::invalid_argument("deterministic adversary needs an algorithm to react to");
  auto chooser = [k](const CacheState* cache) {
    for (int i = k; i >= 0; i--)
      if (!cache->contains(i)) return i;
    throw ProtocolViolation("cache of size k cannot hold all k+1 pages");
  };
  return generate(k, c, 2 * c + 2, 2 * c, num_blocks, chooser, algorithms, mode);
}

std::vector<Rational> rand_level_pmf(int k, long long c) {
  std::vector<Rational> pmf;
  for (int j = 0; j < k; j++) pmf.push_back(Rational(c - 1) / Rational::pow(c, j + 1));
  pmf.push_back(Rational(1) / Rational::pow(c, k));
  return pmf;
}

AdversaryResult rand_prp_generator(int k, long long c, int num_blocks,
                                   unsigned long long seed) {
  // Integer sampling weights: W_j = (c-1) c^(k-j) for j < k, W_k = c,
  // summing to c^(k+1).
  long long total = 1;
  for (int i = 0; i <= k; i++) {
    if (total > (long long)1e15 / c) throw std::invalid_argument("level distribution overflow");
    total *= c;
  }
  std::vector<long long> cumulative;
  long long acc = 0;
  for (int j = 0; j < k; j++) {
    long long w = c - 1;
    for (int i = 0; i < k - j; i++) w *= c;
    acc += w;
    cumulative.push_back(acc);
  }
  cumulative.push_back(total);

  auto rng = std::make_shared<std::mt19937_64>(seed);
  auto chooser = [rng, cumulative, total](const CacheState*) {
    unsigned long long limit = UINT64_MAX - UINT64_MAX % (unsigned long long)total;
    unsigned long long v;
    do {
      v = (*rng)();
    } while (v >= limit);
    long long r = (long long)(v % (unsigned long long)total);
    for (size_t j = 0; j < cumulative.size(); j++)
      if (r < cumulative[j]) return (int)j;
    return (int)cumulative.size() - 1;
  };

  long long threshold = ceil_rational(Rational(2 * c * k) * harmonic(k));
  return generate(k, c, threshold + 2, threshold, num_blocks, chooser, {}, ChargingMode::EvictCharged);
}

CostLedger replay_stream(const AdversaryResult& adv, OnlineAlgorithm& alg, ChargingMode mode) {
  StartInfo info{adv.k, mode, &adv.weights, adv.k + 1, nullptr, adv.stream.total_length()};
  Driver driver(alg, info);
  for (size_t r = 0; r < adv.stream.runs.size(); r++) {
    const Run& run = adv.stream.runs[r];
    Time first_pred = run.end > run.begin ? run.begin + 1 : adv.committed_next[r];
    PredictionView view{nullptr, first_pred};
    driver.feed_run(run.begin, run.page, run.end - run.begin + 1, view);
  }
  return driver.take_ledger();
}

PrpAnnotation committed_prp_annotation(const AdversaryResult& adv) {
  Time total = adv.stream.total_length();
  PrpAnnotation prp;
  prp.next.assign((size_t)total + 1, 0);
  for (size_t r = 0; r < adv.stream.runs.size(); r++) {
    const Run& run = adv.stream.runs[r];
    for (Time t = run.begin; t < run.end; t++) prp.next[(size_t)t] = t + 1;
    prp.next[(size_t)run.end] = adv.committed_next[r];
  }
  return prp;
}

bool prp_predictions_consistent(const AdversaryResult& adv) {
  std::map<PageId, std::vector<size_t>> by_page;
  for (size_t r = 0; r < adv.stream.runs.size(); r++)
    by_page[adv.stream.runs[r].page].push_back(r);
  for (auto& [page, list] : by_page) {
    for (size_t i = 0; i + 1 < list.size(); i++) {
      Time committed = adv.committed_next[list[i]];
      Time realized = adv.stream.runs[list[i + 1]].begin;
      if (committed != realized) return false;
    }
  }
  return true;
}

bool blocks_contiguous(const AdversaryResult& adv) {
  for (const BlockRecord& blk : adv.blocks) {
    Time expect = blk.t_begin;
    for (size_t r = blk.run_begin; r < blk.run_end; r++) {
      const Run& run = adv.stream.runs[r];
      if (run.page != (PageId)(r - blk.run_begin)) return false;  // a_0, a_1, ...
      if (run.begin != expect || run.end < run.begin) return false;
      expect = run.end + 1;
    }
    if (blk.run_end - blk.run_begin != (size_t)blk.level + 1) return false;
    const Run& last = adv.stream.runs[blk.run_end - 1];
    if (last.begin != last.end || last.end != blk.t_end) return false;  // single a_level
  }
  return true;
}

Rational block_cost(const CostLedger& ledger, const BlockRecord& block) {
  return ledger_total_between(ledger, block.t_begin, block.t_end);
}

PaddedInstance lookahead_padding(const RequestSequence& seq, const WeightTable& weights,
                                 int n_total, int k, const Rational& eps) {
  if (!(eps > Rational(0))) throw std::invalid_argument("padding weight must be positive");
  int pads_per_gap = n_total - k - 1;
  if (pads_per_gap < 0) throw std::invalid_argument("n_total below k+1 leaves no room for pads");

  PaddedInstance out;
  out.pads_per_gap = pads_per_gap;
  out.weights = weights;
  out.seq.universe = seq.universe;
  PageId next_fresh = seq.universe;
  for (Time t = 1; t <= seq.length(); t++) {
    if (t > 1) {
      for (int i = 0; i < pads_per_gap; i++) {
        out.seq.req.push_back(next_fresh++);
        out.weights.w.push_back(eps);
      }
    }
    out.seq.req.push_back(seq.at(t));
  }
  out.seq.universe = next_fresh;
  return out;
}

RequestSequence s_string(int k_prime, long long c, int m_copies) {
  if (k_prime < 0 || m_copies < 1) throw std::invalid_argument("bad s_string parameters");
  long long ell = k_prime >= 1 ? ceil_rational(Rational(2 * c * k_prime) * harmonic(k_prime)) + 1 : 1;
  std::vector<PageId> s{0, 0};
  for (int i = 1; i <= k_prime; i++) {
    std::vector<PageId> next;
    if ((long long)s.size() * ell + 1 > 20000000)
      throw SizeLimitError("s_string too long to materialize");
    next.reserve(s.size() * (size_t)ell + 1);
    for (long long copy = 0; copy < ell; copy++) next.insert(next.end(), s.begin(), s.end());
    next.push_back(i);
    s = std::move(next);
  }
  std::vector<PageId> full;
  if ((long long)s.size() * m_copies > 20000000)
    throw SizeLimitError("s_string too long to materialize");
  full.reserve(s.size() * (size_t)m_copies);
  for (int copy = 0; copy < m_copies; copy++) full.insert(full.end(), s.begin(), s.end());
  return RequestSequence::of(std::move(full), k_prime + 1);
}

InjectedInstance inject_page_b(const RequestSequence& seq, const WeightTable& weights,
                               const std::vector<Time>& positions, long long v) {
  if (v < 1) throw std::invalid_argument("page b weight denominator must be positive");
  InjectedInstance out;
  out.page_b = seq.universe;
  out.weights = weights;
  out.weights.w.push_back(Rational(1, v));
  out.seq.universe = seq.universe + 1;
  std::vector<Time> sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  size_t next = 0;
  for (Time t = 1; t <= seq.length(); t++) {
    while (next < sorted.size() && sorted[next] == t) {
      out.seq.req.push_back(out.page_b);
      next++;
    }
    out.seq.req.push_back(seq.at(t));
  }
  while (next < sorted.size()) {
    out.seq.req.push_back(out.page_b);
    next++;
  }
  return out;
}

}  // namespace wpage
