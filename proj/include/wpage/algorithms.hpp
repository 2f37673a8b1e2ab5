#pragma once

#include <list>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wpage/core.hpp"
#include "wpage/error_metrics.hpp"
#include "wpage/offline_opt.hpp"
#include "wpage/predictions.hpp"

namespace wpage {

class LruAlgorithm : public OnlineAlgorithm {
 public:
  std::string name() const override { return "lru"; }
  void start(const StartInfo& info) override;
  StepActions step(Time t, PageId p, const PredictionView& view) override;

 private:
  int k_{0};
  std::list<PageId> recency_;  // most recent first
  std::unordered_map<PageId, std::list<PageId>::iterator> where_;
};

class EvictCheapestAlgorithm : public OnlineAlgorithm {
 public:
  std::string name() const override { return "evict_cheapest"; }
  void start(const StartInfo& info) override;
  StepActions step(Time t, PageId p, const PredictionView& view) override;

 private:
  StartInfo info_;
  std::set<PageId> resident_;
};

// Fixed strategy over the universe {a_0..a_k}: on a miss evict a_i when
// resident, a_0 otherwise.
class AlgIAlgorithm : public OnlineAlgorithm {
 public:
  explicit AlgIAlgorithm(int i) : i_(i) {}
  std::string name() const override { return "alg_i:" + std::to_string(i_); }
  void start(const StartInfo& info) override;
  StepActions step(Time t, PageId p, const PredictionView& view) override;

 private:
  int i_{1};
  int k_{0};
  std::set<PageId> resident_;
};

// Replays a precomputed schedule position by position.
class ScheduledAlgorithm : public OnlineAlgorithm {
 public:
  explicit ScheduledAlgorithm(Schedule schedule) : schedule_(std::move(schedule)) {}
  std::string name() const override { return "scheduled"; }
  StepActions step(Time t, PageId p, const PredictionView& view) override;

 private:
  Schedule schedule_;
};

// Shared engine for static (plain cache) and idle (memoryless extra slot):
// a batch starting at s covers the predicted requests through the furthest
// point any window revealed by time s reaches (windows accumulate, so every
// page of a batch that recurs lands in the next batch), and each batch is
// served by an exact offline schedule computed at batch start. If the
// stream runs out or contradicts the input, the engine degrades to demand
// serving with cheapest-weight eviction.
class BatchedPredictiveAlgorithm : public OnlineAlgorithm {
 public:
  BatchedPredictiveAlgorithm(bool memoryless, std::string name)
      : memoryless_(memoryless), name_(std::move(name)) {}
  std::string name() const override { return name_; }
  void start(const StartInfo& info) override;
  StepActions step(Time t, PageId p, const PredictionView& view) override;

  const std::vector<std::pair<Time, Time>>& batches() const { return batches_; }

 private:
  void plan_batch(Time t);
  StepActions demand(PageId p);
  void apply(const StepActions& acts);

  bool memoryless_{false};
  std::string name_;
  StartInfo info_;
  std::set<PageId> mirror_;
  bool plan_valid_{false};
  Time horizon_{0};
  Time batch_begin_{0}, batch_end_{0};
  Schedule plan_;
  std::vector<PageId> planned_pages_;
  std::vector<std::pair<Time, Time>> batches_;
};

std::unique_ptr<BatchedPredictiveAlgorithm> make_static();
std::unique_ptr<BatchedPredictiveAlgorithm> make_idle();

// Runs static on the prediction sequence and imitates its cache mutations
// positionally; input requests not resident at their time are served by a
// forced fetch-and-evict charged to this algorithm.
class FollowAlgorithm : public OnlineAlgorithm {
 public:
  std::string name() const override { return "follow"; }
  void start(const StartInfo& info) override;
  StepActions step(Time t, PageId p, const PredictionView& view) override;

 private:
  ServeTrace static_trace_;
  std::set<PageId> mirror_;
  Time m_{0};
};

// k+1 normal slots; imitates a precomputed idle run on the prediction
// sequence whenever the constrained edit distance between the pending
// prediction window and the queued input drops below a third of their
// weight, and otherwise serves through the revolving final slot.
class LearnAlgorithm : public OnlineAlgorithm {
 public:
  std::string name() const override { return "learn"; }
  int cache_capacity(int k) const override { return k + 1; }
  void start(const StartInfo& info) override;
  StepActions step(Time t, PageId p, const PredictionView& view) override;

  long long step3a_count() const { return fired_; }
  long long feasibility_checks() const { return feasibility_checks_; }
  Time imitated_through() const { return s_; }
  size_t queue_size() const { return queue_.size(); }

 private:
  void refresh_extraction();

  StartInfo info_;
  ServeTrace idle_trace_;
  Time m_{0};
  Time s_{0};
  std::vector<PageId> queue_;
  Rational queue_weight_;
  std::optional<PageId> final_slot_;
  std::set<PageId> mirror_;
  RequestSequence ext_a_;
  std::vector<Rational> ext_prefix_w_;
  bool ext_dirty_{true};
  long long fired_{0};
  long long feasibility_checks_{0};
};

// Names accepted: lru, evict_cheapest, static, follow, idle, learn,
// alg_i:<i>.
std::unique_ptr<OnlineAlgorithm> make_algorithm(const std::string& spec);

}  // namespace wpage
