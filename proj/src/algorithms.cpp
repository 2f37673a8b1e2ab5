#include "wpage/algorithms.hpp"

#include <algorithm>

namespace wpage {

namespace {

PageId cheapest_resident(const std::set<PageId>& resident, const WeightTable& weights) {
  PageId victim = -1;
  for (PageId q : resident)
    if (victim < 0 || weights.at(q) < weights.at(victim)) victim = q;
  return victim;
}

}  // namespace

void LruAlgorithm::start(const StartInfo& info) {
  k_ = info.k;
  recency_.clear();
  where_.clear();
}

StepActions LruAlgorithm::step(Time, PageId p, const PredictionView&) {
  StepActions out;
  auto it = where_.find(p);
  if (it != where_.end()) {
    recency_.erase(it->second);
  } else {
    if ((int)recency_.size() == k_) {
      PageId victim = recency_.back();
      recency_.pop_back();
      where_.erase(victim);
      out.actions.push_back({ActionKind::Evict, victim});
    }
    out.actions.push_back({ActionKind::Fetch, p});
  }
  recency_.push_front(p);
  where_[p] = recency_.begin();
  return out;
}

void EvictCheapestAlgorithm::start(const StartInfo& info) {
  info_ = info;
  resident_.clear();
}

StepActions EvictCheapestAlgorithm::step(Time, PageId p, const PredictionView&) {
  StepActions out;
  if (resident_.count(p)) return out;
  if ((int)resident_.size() == info_.k) {
    PageId victim = cheapest_resident(resident_, *info_.weights);
    resident_.erase(victim);
    out.actions.push_back({ActionKind::Evict, victim});
  }
  resident_.insert(p);
  out.actions.push_back({ActionKind::Fetch, p});
  return out;
}

void AlgIAlgorithm::start(const StartInfo& info) {
  if (i_ < 1 || i_ > info.k)
    throw std::invalid_argument("alg_i index must be in [1, k]");
  k_ = info.k;
  resident_.clear();
}

StepActions AlgIAlgorithm::step(Time, PageId p, const PredictionView&) {
  if (p < 0 || p > k_)
    throw std::invalid_argument("alg_i request outside the universe {a_0..a_k}");
  StepActions out;
  if (resident_.count(p)) return out;
  if ((int)resident_.size() == k_) {
    PageId victim = resident_.count(i_) ? i_ : 0;
    if (!resident_.count(victim))
      throw ProtocolViolation("alg_i invariant broken: neither a_i nor a_0 evictable");
    resident_.erase(victim);
    out.actions.push_back({ActionKind::Evict, victim});
  }
  resident_.insert(p);
  out.actions.push_back({ActionKind::Fetch, p});
  return out;
}

StepActions ScheduledAlgorithm::step(Time t, PageId, const PredictionView&) {
  if (t < 1 || t >= (Time)schedule_.steps.size())
    throw ProtocolViolation("scheduled replay ran past its schedule");
  return schedule_.steps[(size_t)t];
}

void BatchedPredictiveAlgorithm::start(const StartInfo& info) {
  info_ = info;
  mirror_.clear();
  plan_valid_ = false;
  horizon_ = 0;
  batch_begin_ = batch_end_ = 0;
  batches_.clear();
}

void BatchedPredictiveAlgorithm::plan_batch(Time t) {
  plan_valid_ = false;
  const PredictionStream* ps = info_.predictions;
  if (ps == nullptr || ps->length() < t) return;  // stream exhausted
  Time e = std::max(horizon_, ps->sprp_end(t));
  RequestSequence batch = ps->predicted.subrange(t, e);
  OptResult plan = batch_optimal(batch, mirror_, *info_.weights, info_.k, memoryless_, info_.mode);
  plan_ = std::move(plan.schedule);
  planned_pages_ = batch.req;
  batch_begin_ = t;
  batch_end_ = e;
  batches_.push_back({t, e});
  plan_valid_ = true;
}

StepActions BatchedPredictiveAlgorithm::demand(PageId p) {
  StepActions out;
  if (mirror_.count(p)) return out;
  if ((int)mirror_.size() == info_.k)
    out.actions.push_back({ActionKind::Evict, cheapest_resident(mirror_, *info_.weights)});
  out.actions.push_back({ActionKind::Fetch, p});
  apply(out);
  return out;
}

void BatchedPredictiveAlgorithm::apply(const StepActions& acts) {
  for (const Action& a : acts.actions) {
    if (a.kind == ActionKind::Fetch)
      mirror_.insert(a.page);
    else if (a.kind == ActionKind::Evict)
      mirror_.erase(a.page);
  }
}

StepActions BatchedPredictiveAlgorithm::step(Time t, PageId p, const PredictionView&) {
  const PredictionStream* ps = info_.predictions;
  if (ps != nullptr && t <= ps->length()) horizon_ = std::max(horizon_, ps->sprp_end(t));
  if (!plan_valid_ || t > batch_end_) plan_batch(t);
  if (!plan_valid_) return demand(p);
  size_t off = (size_t)(t - batch_begin_ + 1);
  if (planned_pages_[off - 1] != p) {  // misprediction: degrade and replan
    plan_valid_ = false;
    batch_end_ = t;
    return demand(p);
  }
  StepActions out = plan_.steps[off];
  apply(out);
  return out;
}

std::unique_ptr<BatchedPredictiveAlgorithm> make_static() {
  return std::make_unique<BatchedPredictiveAlgorithm>(false, "static");
}

std::unique_ptr<BatchedPredictiveAlgorithm> make_idle() {
  return std::make_unique<BatchedPredictiveAlgorithm>(true, "idle");
}

void FollowAlgorithm::start(const StartInfo& info) {
  if (info.predictions == nullptr)
    throw std::invalid_argument("follow requires a prediction sequence");
  mirror_.clear();
  m_ = info.predictions->length();
  auto inner = make_static();
  static_trace_ = serve_traced(*inner, info.predictions->predicted, *info.predictions,
                               *info.weights, info.k, info.mode);
}

StepActions FollowAlgorithm::step(Time t, PageId p, const PredictionView&) {
  StepActions out;
  if (t <= m_) out = static_trace_.steps[(size_t)t];
  bool served = false;
  for (const Action& a : out.actions) {
    if (a.kind == ActionKind::Fetch)
      mirror_.insert(a.page);
    else if (a.kind == ActionKind::Evict)
      mirror_.erase(a.page);
    else if (a.page == p)
      served = true;
  }
  if (!mirror_.count(p) && !served)
    out.actions.push_back({ActionKind::Memoryless, p});
  return out;
}

void LearnAlgorithm::start(const StartInfo& info) {
  if (info.predictions == nullptr)
    throw std::invalid_argument("learn requires a prediction sequence");
  info_ = info;
  m_ = info.predictions->length();
  auto idle = make_idle();
  idle_trace_ = serve_traced(*idle, info.predictions->predicted, *info.predictions,
                             *info.weights, info.k, info.mode);
  s_ = 0;
  queue_.clear();
  queue_weight_ = Rational(0);
  final_slot_.reset();
  mirror_.clear();
  ext_dirty_ = true;
  fired_ = 0;
  feasibility_checks_ = 0;
}

void LearnAlgorithm::refresh_extraction() {
  if (!ext_dirty_) return;
  ext_a_ = info_.predictions->predicted.subrange(s_ + 1, m_);
  ext_prefix_w_.assign((size_t)ext_a_.length() + 1, Rational(0));
  for (Time x = 1; x <= ext_a_.length(); x++)
    ext_prefix_w_[(size_t)x] = ext_prefix_w_[(size_t)x - 1] + info_.weights->at(ext_a_.at(x));
  ext_dirty_ = false;
}

StepActions LearnAlgorithm::step(Time, PageId p, const PredictionView&) {
  queue_.push_back(p);
  queue_weight_ += info_.weights->at(p);

  if (s_ < m_) {
    refresh_extraction();
    RequestSequence pending = RequestSequence::of(queue_, std::max(info_.universe, ext_a_.universe));
    auto vals = led_prefix_values(ext_a_, pending, *info_.weights, /*constrained=*/true);
    for (Time tau = 1; tau <= ext_a_.length(); tau++) {
      if (Rational(3) * vals[(size_t)tau] < ext_prefix_w_[(size_t)tau] + queue_weight_) {
        feasibility_checks_++;
        if (ext_a_.at(tau) != p)
          throw ProtocolViolation("learn imitation fired at a prediction that is not the arrival");
        StepActions out;
        if (final_slot_) {
          out.actions.push_back({ActionKind::Evict, *final_slot_});
          final_slot_.reset();
        }
        for (Time pos = s_ + 1; pos <= s_ + tau; pos++) {
          const auto& acts = idle_trace_.steps[(size_t)pos].actions;
          out.actions.insert(out.actions.end(), acts.begin(), acts.end());
        }
        mirror_ = idle_trace_.cache_after[(size_t)(s_ + tau)];
        s_ += tau;
        queue_.clear();
        queue_weight_ = Rational(0);
        ext_dirty_ = true;
        fired_++;
        return out;
      }
    }
  }

  if (mirror_.count(p) || (final_slot_ && *final_slot_ == p)) return {};
  StepActions out;
  if (final_slot_) out.actions.push_back({ActionKind::Evict, *final_slot_});
  out.actions.push_back({ActionKind::Fetch, p});
  final_slot_ = p;
  return out;
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& spec) {
  if (spec == "lru") return std::make_unique<LruAlgorithm>();
  if (spec == "evict_cheapest") return std::make_unique<EvictCheapestAlgorithm>();
  if (spec == "static") return make_static();
  if (spec == "idle") return make_idle();
  if (spec == "follow") return std::make_unique<FollowAlgorithm>();
  if (spec == "learn") return std::make_unique<LearnAlgorithm>();
  if (spec.rfind("alg_i:", 0) == 0)
    return std::make_unique<AlgIAlgorithm>(std::stoi(spec.substr(6)));
  throw std::invalid_argument("unknown algorithm: " + spec);
}

}  // namespace wpage
