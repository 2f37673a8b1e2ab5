#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "wpage/adversaries.hpp"
#include "wpage/algorithms.hpp"
#include "wpage/error_metrics.hpp"
#include "wpage/harness.hpp"
#include "wpage/io.hpp"
#include "wpage/offline_opt.hpp"

using namespace wpage;

namespace {

int cmd_metrics(const std::string& pred_path, const std::string& input_path,
                const std::string& weights_path) {
  RequestSequence b = read_trace(input_path);
  RequestSequence a = read_trace(pred_path);
  int universe = std::max(a.universe, b.universe);
  a.universe = b.universe = universe;
  WeightTable w = read_weights(weights_path, universe);
  std::cout << "l1 " << l1(a, b, w).str() << "\n";
  std::cout << "lpd " << lpd(a, b, w).str() << "\n";
  std::cout << "led " << led_value(a, b, w, false).str() << "\n";
  std::cout << "led_constrained " << led_value(a, b, w, true).str() << "\n";
  return 0;
}

int cmd_opt(const std::string& input_path, const std::string& weights_path, int k,
            bool plus1, bool lp, const std::string& charging) {
  RequestSequence b = read_trace(input_path);
  WeightTable w = read_weights(weights_path, b.universe);
  Rational cost;
  if (lp)
    cost = opt_plus1_lp(b, w, k);
  else if (plus1)
    cost = opt_plus1_dp(b, w, k).cost;
  else
    cost = opt_dp(b, w, k, charging_mode_from_string(charging)).cost;
  std::cout << "cost " << cost.str() << "\n";
  return 0;
}

int cmd_simulate(const std::string& algo, const std::string& input_path,
                 const std::string& pred_path, const std::string& weights_path, int k,
                 const std::string& charging, bool trace) {
  RequestSequence b = read_trace(input_path);
  RequestSequence a = pred_path.empty() ? b : read_trace(pred_path);
  int universe = std::max(a.universe, b.universe);
  a.universe = b.universe = universe;
  WeightTable w = read_weights(weights_path, universe);
  PredictionStream stream = PredictionStream::from_sequence(a);
  auto alg = make_algorithm(algo);
  ChargingMode mode = charging_mode_from_string(charging);
  if (trace) {
    ServeTrace st = serve_traced(*alg, b, stream, w, k, mode);
    for (Time t = 1; t <= b.length(); t++) {
      std::cout << t << " " << b.at(t);
      for (const Action& act : st.steps[(size_t)t].actions) {
        const char* kind = act.kind == ActionKind::Fetch
                               ? "fetch"
                               : act.kind == ActionKind::Evict ? "evict" : "memoryless";
        std::cout << " " << kind << ":" << act.page;
      }
      std::cout << "\n";
    }
    std::cout << "total " << st.ledger.total.str() << "\n";
  } else {
    CostLedger ledger = serve(*alg, b, stream, w, k, mode);
    std::cout << "total " << ledger.total.str() << "\n";
  }
  return 0;
}

int cmd_adversary(const std::string& kind, int k, long long c, int blocks,
                  unsigned long long seed, const std::string& algo, int copies,
                  const std::string& out, const std::string& pred_out,
                  const std::string& weights_out) {
  if (kind == "sstring") {
    RequestSequence s = s_string(k, c, copies);
    WeightTable w = WeightTable::geometric(k + 1, c);
    if (!out.empty()) write_trace(out, s);
    if (!pred_out.empty()) write_trace(pred_out, s);
    if (!weights_out.empty()) write_weights(weights_out, w);
    std::cout << "length " << s.length() << "\n";
    return 0;
  }
  AdversaryResult adv;
  if (kind == "det") {
    auto alg = make_algorithm(algo);
    adv = det_prp_adversary({alg.get()}, k, c, blocks, ChargingMode::FetchCharged);
    std::cout << "alg_cost " << adv.ledgers[0].total.str() << "\n";
  } else if (kind == "rand") {
    adv = rand_prp_generator(k, c, blocks, seed);
  } else {
    throw std::invalid_argument("unknown adversary kind: " + kind);
  }
  std::cout << "blocks " << adv.blocks.size() << " length " << adv.stream.total_length()
            << "\n";
  if (!out.empty()) write_trace(out, adv.stream.to_dense());
  if (!pred_out.empty()) write_prp_annotation(pred_out, committed_prp_annotation(adv));
  if (!weights_out.empty()) write_weights(weights_out, adv.weights);
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir) {
  ExperimentConfig cfg = ExperimentConfig::parse(read_file(config_path));
  ExperimentOutcome outcome = run_experiment(cfg);
  std::filesystem::create_directories(out_dir);
  emit(outcome.rows, "csv", out_dir + "/results.csv");
  emit(outcome.rows, "json", out_dir + "/results.json");
  if (!outcome.violations.empty()) {
    for (const Violation& v : outcome.violations) {
      std::string dir = out_dir + "/violation_" + v.instance_id + "_" + v.algo;
      std::filesystem::create_directories(dir);
      write_trace(dir + "/B.txt", v.minimized.input);
      write_trace(dir + "/A.txt", v.minimized.pred);
      if (v.minimized.weights.universe() > 0) write_weights(dir + "/w.txt", v.minimized.weights);
      write_file(dir + "/README.txt",
                 "bound violated: " + v.description + "\nk = " + std::to_string(v.minimized.k) +
                     "\ncharging = " + to_string(v.minimized.mode) + "\n");
      std::cerr << "bound violation: " << v.instance_id << " " << v.algo << " ("
                << v.description << "), minimized instance in " << dir << "\n";
    }
    return 2;
  }
  std::cout << outcome.rows.size() << " rows, all checked bounds satisfied\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted paging with predictions: simulator, exact optima, "
               "error metrics, adversarial generators"};
  app.require_subcommand(1);

  std::string pred, input, weights, algo = "lru", charging = "fetch", kind = "det";
  std::string config, out, pred_out, weights_out, out_dir = ".";
  int k = 2, blocks = 50, copies = 1;
  long long c = 2;
  unsigned long long seed = 1;
  bool plus1 = false, lp = false, trace = false;

  auto* metrics = app.add_subcommand("metrics", "prediction error measures");
  metrics->add_option("--pred", pred)->required();
  metrics->add_option("--input", input)->required();
  metrics->add_option("--weights", weights)->required();

  auto* opt = app.add_subcommand("opt", "exact offline optimum");
  opt->add_option("--input", input)->required();
  opt->add_option("--weights", weights)->required();
  opt->add_option("--k", k)->required();
  opt->add_flag("--plus1", plus1, "one extra memoryless slot");
  opt->add_flag("--lp", lp, "LP relaxation of the memoryless-slot optimum");
  opt->add_option("--charging", charging, "evict|fetch");

  auto* sim = app.add_subcommand("simulate", "run an online algorithm");
  sim->add_option("--algo", algo)->required();
  sim->add_option("--input", input)->required();
  sim->add_option("--pred", pred, "prediction sequence (defaults to the input)");
  sim->add_option("--weights", weights)->required();
  sim->add_option("--k", k)->required();
  sim->add_option("--charging", charging, "evict|fetch");
  sim->add_flag("--trace", trace, "print per-step actions");

  auto* adv = app.add_subcommand("adversary", "lower-bound stream generators");
  adv->add_option("--kind", kind, "det|rand|sstring")->required();
  adv->add_option("--k", k)->required();
  adv->add_option("--c", c);
  adv->add_option("--blocks", blocks);
  adv->add_option("--seed", seed);
  adv->add_option("--algo", algo, "algorithm the det adversary reacts to");
  adv->add_option("--copies", copies, "sstring repetitions");
  adv->add_option("--out", out);
  adv->add_option("--pred-out", pred_out);
  adv->add_option("--weights-out", weights_out);

  auto* exp = app.add_subcommand("experiment", "run a configured experiment grid");
  exp->add_option("--config", config)->required();
  exp->add_option("--out", out_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (metrics->parsed()) return cmd_metrics(pred, input, weights);
    if (opt->parsed()) return cmd_opt(input, weights, k, plus1, lp, charging);
    if (sim->parsed()) return cmd_simulate(algo, input, pred, weights, k, charging, trace);
    if (adv->parsed())
      return cmd_adversary(kind, k, c, blocks, seed, algo, copies, out, pred_out, weights_out);
    if (exp->parsed()) return cmd_experiment(config, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
