#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wpage/core.hpp"
#include "wpage/predictions.hpp"

namespace wpage {

// Key = value text configuration; '#' starts a comment.
struct ExperimentConfig {
  std::string family = "random";  // random | det-adversary | rand-adversary | sstring
  std::vector<std::string> algos = {"static"};
  std::string predictor = "perfect";  // perfect | perturb | disjoint
  NoiseSpec noise;
  int trials = 100;
  unsigned long long seed = 1;
  ChargingMode charging = ChargingMode::EvictCharged;
  int n_min = 3, n_max = 8;
  long long t_min = 10, t_max = 40;
  int k_min = 1, k_max = 4;
  std::string weights_kind = "pow2";  // pow2 | ladder | unit
  std::string dist = "uniform";       // uniform | zipf
  bool with_opt = true;
  bool check_bounds = true;
  Rational bound_scale = Rational(1);  // debug knob: scales every bound RHS
  int adv_k = 3;
  long long adv_c = 2;
  int adv_blocks = 50;
  int sstring_copies = 1;

  static ExperimentConfig parse(const std::string& text);
};

struct ResultRow {
  std::string instance_id;
  std::string algo;
  int k{0};
  Rational cost;
  bool has_opt{false};
  Rational opt_cost;
  Rational l1_v, lpd_v, led_v, led_c;
  bool bound_checked{false};
  bool bound_satisfied{true};
};

struct BoundInstance {
  RequestSequence input;
  RequestSequence pred;
  WeightTable weights;
  int k{0};
  ChargingMode mode{ChargingMode::EvictCharged};
};

struct Violation {
  std::string instance_id;
  std::string algo;
  std::string description;
  BoundInstance minimized;
};

struct ExperimentOutcome {
  std::vector<ResultRow> rows;
  std::vector<Violation> violations;
};

ExperimentOutcome run_experiment(const ExperimentConfig& config);

std::string rows_to_csv(const std::vector<ResultRow>& rows);
std::string rows_to_json(const std::vector<ResultRow>& rows);
std::vector<ResultRow> rows_from_json(const std::string& text);

// format is "csv" or "json"; rows must be nonempty.
void emit(const std::vector<ResultRow>& rows, const std::string& format,
          const std::string& path);

// Greedy request-deletion from the input sequence while the violation
// predicate stays true.
BoundInstance minimize_counterexample(BoundInstance inst,
                                      const std::function<bool(const BoundInstance&)>& violated);

// Deterministic per-trial seed derivation.
unsigned long long derive_seed(unsigned long long seed, unsigned long long salt);

}  // namespace wpage
