#include "wpage/harness.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"
#include "wpage/adversaries.hpp"
#include "wpage/algorithms.hpp"
#include "wpage/error_metrics.hpp"
#include "wpage/io.hpp"
#include "wpage/offline_opt.hpp"

namespace wpage {

unsigned long long derive_seed(unsigned long long seed, unsigned long long salt) {
  unsigned long long z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(unsigned long long seed) : gen(seed) {}
  unsigned long long below(unsigned long long n) {
    unsigned long long limit = UINT64_MAX - UINT64_MAX % n;
    unsigned long long v;
    do {
      v = gen();
    } while (v >= limit);
    return v % n;
  }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + (long long)below((unsigned long long)(hi - lo + 1));
  }
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!isspace((unsigned char)ch)) {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

struct Instance {
  RequestSequence input;
  RequestSequence pred;
  WeightTable weights;
  int k{0};
};

WeightTable sample_weights(const std::string& kind, int universe, Rng& rng) {
  if (kind == "unit") return WeightTable::unit(universe);
  if (kind == "ladder") return WeightTable::geometric(universe, 2);
  WeightTable t;  // pow2: weights drawn from {1,2,4,8,16}
  for (int i = 0; i < universe; i++)
    t.w.push_back(Rational(1ll << rng.below(5)));
  return t;
}

RequestSequence sample_requests(int universe, long long len, const std::string& dist, Rng& rng) {
  std::vector<PageId> req;
  if (dist == "zipf") {
    std::vector<unsigned long long> cum;
    unsigned long long acc = 0;
    for (int i = 0; i < universe; i++) {
      acc += 1000000000ull / (unsigned long long)(i + 1);
      cum.push_back(acc);
    }
    for (long long t = 0; t < len; t++) {
      unsigned long long r = rng.below(cum.back());
      req.push_back((PageId)(std::upper_bound(cum.begin(), cum.end(), r) - cum.begin()));
    }
  } else {
    for (long long t = 0; t < len; t++)
      req.push_back((PageId)rng.below((unsigned long long)universe));
  }
  return RequestSequence::of(std::move(req), universe);
}

Instance sample_instance(const ExperimentConfig& cfg, unsigned long long trial_seed) {
  Rng rng(trial_seed);
  Instance inst;
  int n = (int)rng.range(cfg.n_min, cfg.n_max);
  long long len = rng.range(cfg.t_min, cfg.t_max);
  inst.k = (int)rng.range(cfg.k_min, std::min(cfg.k_max, std::max(cfg.k_min, n - 1)));
  bool disjoint = cfg.predictor == "disjoint";
  int universe = disjoint ? 2 * n : n;
  inst.weights = sample_weights(cfg.weights_kind, universe, rng);
  inst.input = sample_requests(n, len, cfg.dist, rng);
  inst.input.universe = universe;

  if (cfg.predictor == "perfect") {
    inst.pred = inst.input;
  } else if (cfg.predictor == "perturb") {
    inst.pred = perturb(inst.input, cfg.noise, derive_seed(trial_seed, 0xA11CE));
  } else if (disjoint) {
    RequestSequence a = sample_requests(n, len, cfg.dist, rng);
    for (PageId& p : a.req) p += n;
    a.universe = universe;
    inst.pred = a;
  } else {
    throw std::invalid_argument("unknown predictor: " + cfg.predictor);
  }
  return inst;
}

struct BoundCheck {
  bool checked{false};
  bool satisfied{true};
  std::string description;
};

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad config line: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "family") cfg.family = value;
    else if (key == "algos") cfg.algos = split_list(value);
    else if (key == "predictor") cfg.predictor = value;
    else if (key == "sub_rate") cfg.noise.substitution = std::stod(value);
    else if (key == "ins_rate") cfg.noise.insertion = std::stod(value);
    else if (key == "del_rate") cfg.noise.deletion = std::stod(value);
    else if (key == "trials") cfg.trials = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "charging") cfg.charging = charging_mode_from_string(value);
    else if (key == "n_min") cfg.n_min = std::stoi(value);
    else if (key == "n_max") cfg.n_max = std::stoi(value);
    else if (key == "t_min") cfg.t_min = std::stoll(value);
    else if (key == "t_max") cfg.t_max = std::stoll(value);
    else if (key == "k_min") cfg.k_min = std::stoi(value);
    else if (key == "k_max") cfg.k_max = std::stoi(value);
    else if (key == "weights") cfg.weights_kind = value;
    else if (key == "dist") cfg.dist = value;
    else if (key == "with_opt") cfg.with_opt = value == "true";
    else if (key == "check_bounds") cfg.check_bounds = value == "true";
    else if (key == "bound_scale") cfg.bound_scale = Rational::parse(value);
    else if (key == "adv_k") cfg.adv_k = std::stoi(value);
    else if (key == "adv_c") cfg.adv_c = std::stoll(value);
    else if (key == "adv_blocks") cfg.adv_blocks = std::stoi(value);
    else if (key == "sstring_copies") cfg.sstring_copies = std::stoi(value);
    else throw std::invalid_argument("unknown config key: " + key);
  }
  return cfg;
}

namespace {

BoundCheck check_bound(const ExperimentConfig& cfg, const std::string& algo,
                       const Instance& inst, const Rational& cost, bool has_opt,
                       const Rational& opt, const Rational& l1v, const Rational& ledc,
                       bool has_idle, const Rational& idle_cost) {
  BoundCheck bc;
  if (!cfg.check_bounds) return bc;
  const Rational& s = cfg.bound_scale;
  if (cfg.family == "det-adversary") {
    if (!has_opt) return bc;
    bc.checked = true;
    bc.satisfied = Rational(32) * cost * s >= Rational(inst.k) * opt;
    bc.description = "32*cost >= k*opt on the deterministic adversary stream";
    return bc;
  }
  if (algo == "static" && cfg.predictor == "perfect" && has_opt) {
    bc.checked = true;
    bc.satisfied = cost <= s * Rational(2) * opt;
    bc.description = "cost(static) <= 2*opt under perfect predictions";
  } else if (algo == "follow" && has_opt) {
    bc.checked = true;
    bc.satisfied = cost <= s * (Rational(2) * opt + Rational(6) * l1v);
    bc.description = "cost(follow) <= 2*opt + 6*l1";
  } else if (algo == "learn" && has_idle) {
    bc.checked = true;
    bc.satisfied = cost <= s * (idle_cost + Rational(12) * ledc);
    bc.description = "cost(learn) <= cost(idle on pred) + 12*constrained-led";
  }
  return bc;
}

void run_standard_trial(const ExperimentConfig& cfg, int trial, ExperimentOutcome& out) {
  char idbuf[32];
  snprintf(idbuf, sizeof idbuf, "t%05d", trial);
  std::string instance_id = idbuf;
  unsigned long long trial_seed = derive_seed(cfg.seed, (unsigned long long)trial);

  Instance inst;
  if (cfg.family == "sstring") {
    inst.input = s_string(cfg.adv_k, cfg.adv_c, cfg.sstring_copies);
    inst.weights = WeightTable::geometric(cfg.adv_k + 1, cfg.adv_c);
    inst.k = std::max(1, cfg.adv_k);
    inst.pred = cfg.predictor == "perturb"
                    ? perturb(inst.input, cfg.noise, derive_seed(trial_seed, 0xA11CE))
                    : inst.input;
  } else {
    inst = sample_instance(cfg, trial_seed);
  }
  PredictionStream stream = PredictionStream::from_sequence(inst.pred);

  Rational l1v = l1(inst.pred, inst.input, inst.weights);
  Rational lpdv = lpd(inst.pred, inst.input, inst.weights);
  Rational ledv = led_value(inst.pred, inst.input, inst.weights, false);
  Rational ledc = led_value(inst.pred, inst.input, inst.weights, true);

  bool has_opt = cfg.with_opt;
  Rational opt;
  if (has_opt) opt = opt_dp(inst.input, inst.weights, inst.k, cfg.charging).cost;

  bool needs_idle = std::find(cfg.algos.begin(), cfg.algos.end(), "learn") != cfg.algos.end();
  Rational idle_cost;
  if (needs_idle && stream.length() > 0) {
    auto idle = make_idle();
    idle_cost = serve(*idle, inst.pred, stream, inst.weights, inst.k, cfg.charging).total;
  }

  for (const std::string& spec : cfg.algos) {
    auto alg = make_algorithm(spec);
    Rational cost = serve(*alg, inst.input, stream, inst.weights, inst.k, cfg.charging).total;
    BoundCheck bc = check_bound(cfg, spec, inst, cost, has_opt, opt, l1v, ledc,
                                needs_idle, idle_cost);
    ResultRow row{instance_id, spec, inst.k, cost, has_opt, opt,
                  l1v, lpdv, ledv, ledc, bc.checked, bc.satisfied};
    out.rows.push_back(row);

    if (bc.checked && !bc.satisfied) {
      auto violated = [&cfg, &spec](const BoundInstance& bi) {
        const RequestSequence& pred_seq = cfg.predictor == "perfect" ? bi.input : bi.pred;
        PredictionStream st = PredictionStream::from_sequence(pred_seq);
        auto a = make_algorithm(spec);
        Rational c = serve(*a, bi.input, st, bi.weights, bi.k, bi.mode).total;
        Rational o = opt_dp(bi.input, bi.weights, bi.k, bi.mode).cost;
        if (spec == "static") return !(c <= cfg.bound_scale * Rational(2) * o);
        if (spec == "follow") {
          Rational e = l1(pred_seq, bi.input, bi.weights);
          return !(c <= cfg.bound_scale * (Rational(2) * o + Rational(6) * e));
        }
        if (spec == "learn") {
          auto idle = make_idle();
          Rational ic = st.length() > 0
                            ? serve(*idle, pred_seq, st, bi.weights, bi.k, bi.mode).total
                            : Rational(0);
          Rational e = led_value(pred_seq, bi.input, bi.weights, true);
          return !(c <= cfg.bound_scale * (ic + Rational(12) * e));
        }
        return false;
      };
      BoundInstance bi{inst.input, inst.pred, inst.weights, inst.k, cfg.charging};
      out.violations.push_back(
          {instance_id, spec, bc.description, minimize_counterexample(bi, violated)});
    }
  }
}

void run_adversary_trial(const ExperimentConfig& cfg, int trial, ExperimentOutcome& out) {
  char idbuf[32];
  snprintf(idbuf, sizeof idbuf, "t%05d", trial);
  std::string instance_id = idbuf;

  for (const std::string& spec : cfg.algos) {
    AdversaryResult adv;
    Rational cost;
    if (cfg.family == "det-adversary") {
      auto alg = make_algorithm(spec);
      adv = det_prp_adversary({alg.get()}, cfg.adv_k, cfg.adv_c, cfg.adv_blocks, cfg.charging);
      cost = adv.ledgers[0].total;
    } else {
      adv = rand_prp_generator(cfg.adv_k, cfg.adv_c, cfg.adv_blocks,
                               derive_seed(cfg.seed, (unsigned long long)trial));
      auto alg = make_algorithm(spec);
      cost = replay_stream(adv, *alg, cfg.charging).total;
    }
    bool has_opt = cfg.with_opt;
    Rational opt;
    if (has_opt) opt = opt_dp(adv.stream.dedup(), adv.weights, cfg.adv_k, cfg.charging).cost;

    Instance inst;
    inst.k = cfg.adv_k;
    BoundCheck bc = check_bound(cfg, spec, inst, cost, has_opt, opt, Rational(0),
                                Rational(0), false, Rational(0));
    out.rows.push_back(ResultRow{instance_id, spec, cfg.adv_k, cost, has_opt, opt,
                                 Rational(0), Rational(0), Rational(0), Rational(0),
                                 bc.checked, bc.satisfied});
    if (bc.checked && !bc.satisfied) {
      BoundInstance bi;
      bi.k = cfg.adv_k;
      bi.mode = cfg.charging;
      out.violations.push_back({instance_id, spec, bc.description, bi});
    }
  }
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutcome out;
  for (int trial = 0; trial < cfg.trials; trial++) {
    if (cfg.family == "det-adversary" || cfg.family == "rand-adversary")
      run_adversary_trial(cfg, trial, out);
    else
      run_standard_trial(cfg, trial, out);
  }
  return out;
}

namespace {

std::string ratio_field(const ResultRow& r) {
  if (!r.has_opt || r.opt_cost.is_zero()) return "";
  return (r.cost / r.opt_cost).decimal();
}

}  // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream ss;
  ss << "instance_id,algo,k,cost,opt_cost,ratio,l1,lpd,led,led_constrained,"
        "bound_checked,bound_satisfied\n";
  for (const ResultRow& r : rows) {
    ss << r.instance_id << "," << r.algo << "," << r.k << "," << r.cost.decimal() << ","
       << (r.has_opt ? r.opt_cost.decimal() : "") << "," << ratio_field(r) << ","
       << r.l1_v.decimal() << "," << r.lpd_v.decimal() << "," << r.led_v.decimal() << ","
       << r.led_c.decimal() << "," << (r.bound_checked ? "true" : "false") << ","
       << (r.bound_checked ? (r.bound_satisfied ? "true" : "false") : "") << "\n";
  }
  return ss.str();
}

std::string rows_to_json(const std::vector<ResultRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  auto rat = [](const Rational& v) {
    return nlohmann::json{{"dec", v.decimal()}, {"num", v.num()}, {"den", v.den()}};
  };
  for (const ResultRow& r : rows) {
    nlohmann::json o;
    o["instance_id"] = r.instance_id;
    o["algo"] = r.algo;
    o["k"] = r.k;
    o["cost"] = rat(r.cost);
    if (r.has_opt) o["opt_cost"] = rat(r.opt_cost);
    o["l1"] = rat(r.l1_v);
    o["lpd"] = rat(r.lpd_v);
    o["led"] = rat(r.led_v);
    o["led_constrained"] = rat(r.led_c);
    o["bound_checked"] = r.bound_checked;
    if (r.bound_checked) o["bound_satisfied"] = r.bound_satisfied;
    arr.push_back(o);
  }
  return arr.dump(2) + "\n";
}

std::vector<ResultRow> rows_from_json(const std::string& text) {
  nlohmann::json arr = nlohmann::json::parse(text);
  std::vector<ResultRow> rows;
  auto rat = [](const nlohmann::json& v) {
    return Rational(v.at("num").get<long long>(), v.at("den").get<long long>());
  };
  for (const auto& o : arr) {
    ResultRow r;
    r.instance_id = o.at("instance_id").get<std::string>();
    r.algo = o.at("algo").get<std::string>();
    r.k = o.at("k").get<int>();
    r.cost = rat(o.at("cost"));
    r.has_opt = o.contains("opt_cost");
    if (r.has_opt) r.opt_cost = rat(o.at("opt_cost"));
    r.l1_v = rat(o.at("l1"));
    r.lpd_v = rat(o.at("lpd"));
    r.led_v = rat(o.at("led"));
    r.led_c = rat(o.at("led_constrained"));
    r.bound_checked = o.at("bound_checked").get<bool>();
    r.bound_satisfied = r.bound_checked ? o.at("bound_satisfied").get<bool>() : true;
    rows.push_back(r);
  }
  return rows;
}

void emit(const std::vector<ResultRow>& rows, const std::string& format,
          const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit called with no rows");
  if (format == "csv")
    write_file(path, rows_to_csv(rows));
  else if (format == "json")
    write_file(path, rows_to_json(rows));
  else
    throw std::invalid_argument("unknown emit format: " + format);
}

BoundInstance minimize_counterexample(BoundInstance inst,
                                      const std::function<bool(const BoundInstance&)>& violated) {
  if (!violated(inst)) return inst;
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (size_t i = 0; i < inst.input.req.size(); i++) {
      BoundInstance candidate = inst;
      candidate.input.req.erase(candidate.input.req.begin() + (long)i);
      if (candidate.input.req.empty()) continue;
      if (violated(candidate)) {
        inst = candidate;
        shrunk = true;
        break;
      }
    }
  }
  return inst;
}

}  // namespace wpage
