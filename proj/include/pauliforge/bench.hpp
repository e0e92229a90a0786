// Copyright 2026 The pauliforge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include <nlohmann/json.hpp>

#include "pauliforge/ddqn.hpp"
#include "pauliforge/mcts.hpp"
#include "pauliforge/sa.hpp"

namespace pauliforge {

/// Budget-matched comparison experiment. Budgets follow the evaluation
/// definitions of the comparison protocol: RL counts reward queries, SA
/// counts cost queries, MCTS sums max tree depth plus playout length per
/// episode, and the caps must be ordered N_RL < N_MCTS < N_SA.
struct ExperimentSpec {
  std::vector<std::string> methods = {"naive", "rl", "sa", "mcts"};
  uint32_t q = 4;
  uint32_t t_size = 8;
  std::vector<uint64_t> instance_seeds = {0, 1, 2, 3, 4};
  int repeats = 1;     // independent runs (seeds) per method and instance
  int orderings = 100;  // target-order shuffles for the baselines
  uint64_t seed = 0;
  uint64_t rl_budget = 300000;
  uint64_t mcts_budget = 400000;
  uint64_t sa_budget = 500000;
  TrainConfig rl;
  SaConfig sa;
  MctsConfig mcts;
  std::vector<double> mcts_grid = {85.0, 20.0, 5.0};  // coarse sweep, budget split
  double rl_stop_below_percent = 0.0;  // optional early stop for desk runs

  ExperimentSpec() {
    rl = TrainConfig::comparison_preset();
    mcts.max_depth = rl.max_actions;
  }

  void validate() const {
    const bool cmp_rl = std::find(methods.begin(), methods.end(), "rl") != methods.end();
    const bool cmp_sa = std::find(methods.begin(), methods.end(), "sa") != methods.end();
    const bool cmp_mc = std::find(methods.begin(), methods.end(), "mcts") != methods.end();
    if (cmp_rl && cmp_mc && rl_budget >= mcts_budget)
      throw std::invalid_argument("ExperimentSpec: budgets must satisfy N_RL < N_MCTS");
    if (cmp_mc && cmp_sa && mcts_budget >= sa_budget)
      throw std::invalid_argument("ExperimentSpec: budgets must satisfy N_MCTS < N_SA");
    for (const auto& m : methods)
      if (m != "naive" && m != "rl" && m != "sa" && m != "mcts")
        throw std::invalid_argument("ExperimentSpec: unknown method '" + m + "'");
    if (instance_seeds.empty()) throw std::invalid_argument("ExperimentSpec: no instances");
    if (repeats < 1 || orderings < 1) throw std::invalid_argument("ExperimentSpec: bad counts");
  }

  uint64_t hash() const {
    std::string blob;
    for (const auto& m : methods) blob += m + ",";
    uint64_t h = fnv1a(blob.data(), blob.size());
    h = fnv1a(&q, sizeof(q), h);
    h = fnv1a(&t_size, sizeof(t_size), h);
    for (uint64_t s : instance_seeds) h = fnv1a(&s, sizeof(s), h);
    h = fnv1a(&repeats, sizeof(repeats), h);
    h = fnv1a(&orderings, sizeof(orderings), h);
    h = fnv1a(&seed, sizeof(seed), h);
    h = fnv1a(&rl_budget, sizeof(rl_budget), h);
    h = fnv1a(&mcts_budget, sizeof(mcts_budget), h);
    h = fnv1a(&sa_budget, sizeof(sa_budget), h);
    h = hash_combine(h, rl.hash());
    for (double c : mcts_grid) h = fnv1a(&c, sizeof(c), h);
    h = fnv1a(&rl_stop_below_percent, sizeof(rl_stop_below_percent), h);
    return h;
  }
};

inline ExperimentSpec spec_from_json(const nlohmann::json& j) {
  ExperimentSpec s;
  if (j.contains("methods")) s.methods = j["methods"].get<std::vector<std::string>>();
  if (j.contains("q")) s.q = j["q"];
  if (j.contains("t_size")) s.t_size = j["t_size"];
  if (j.contains("instance_seeds"))
    s.instance_seeds = j["instance_seeds"].get<std::vector<uint64_t>>();
  if (j.contains("repeats")) s.repeats = j["repeats"];
  if (j.contains("orderings")) s.orderings = j["orderings"];
  if (j.contains("seed")) s.seed = j["seed"];
  if (j.contains("budgets")) {
    const auto& b = j["budgets"];
    if (b.contains("rl")) s.rl_budget = b["rl"];
    if (b.contains("mcts")) s.mcts_budget = b["mcts"];
    if (b.contains("sa")) s.sa_budget = b["sa"];
  }
  if (j.contains("rl")) {
    const auto& r = j["rl"];
    if (r.contains("episodes")) s.rl.episodes = r["episodes"];
    if (r.contains("max_actions")) s.rl.max_actions = r["max_actions"];
    if (r.contains("learning_rate")) s.rl.learning_rate = r["learning_rate"];
    if (r.contains("gamma")) s.rl.gamma = r["gamma"];
    if (r.contains("batch_size")) s.rl.batch_size = r["batch_size"];
    if (r.contains("warmup")) s.rl.warmup = r["warmup"];
    if (r.contains("target_sync")) s.rl.target_sync = r["target_sync"];
    if (r.contains("hidden_width")) s.rl.hidden_width = r["hidden_width"];
    if (r.contains("hidden_layers")) s.rl.hidden_layers = r["hidden_layers"];
  }
  if (j.contains("sa")) {
    const auto& a = j["sa"];
    if (a.contains("tau0")) s.sa.tau0 = a["tau0"];
    if (a.contains("anneal_steps")) s.sa.anneal_steps = a["anneal_steps"];
    if (a.contains("start"))
      s.sa.start = a["start"] == "empty" ? SaConfig::Start::Empty : SaConfig::Start::Naive;
    if (a.contains("slots")) s.sa.slots = a["slots"];
  }
  if (j.contains("mcts")) {
    const auto& m = j["mcts"];
    if (m.contains("grid")) s.mcts_grid = m["grid"].get<std::vector<double>>();
    if (m.contains("max_depth")) s.mcts.max_depth = m["max_depth"];
    if (m.contains("stop_solutions")) s.mcts.stop_solutions = m["stop_solutions"];
    if (m.contains("cumulative_value")) s.mcts.cumulative_value = m["cumulative_value"];
  }
  if (j.contains("rl_stop_below_percent")) s.rl_stop_below_percent = j["rl_stop_below_percent"];
  s.mcts.max_depth = s.rl.max_actions;
  s.validate();
  return s;
}

inline ExperimentSpec read_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_spec: cannot open " + path);
  return spec_from_json(nlohmann::json::parse(in));
}

struct BaselineCounts {
  double n_sim_mean = 0.0;  // raw simultaneous count, averaged over orderings
  int n_ind = 0;            // order-independent individual count
};

/// N_ind once (the averaging loop asserts its order invariance), N_sim as
/// the mean raw count of the conversion over shuffled target orderings.
inline BaselineCounts baseline_counts(const GscInstance& inst, int orderings, uint64_t seed) {
  if (orderings < 1) throw std::invalid_argument("baseline_counts: orderings must be >= 1");
  BaselineCounts out;
  out.n_ind = naive_individual(inst).gate_count;
  Rng rng(hash_combine(seed, 0xba5e11ull));
  std::vector<int> order(inst.targets.size());
  double total = 0.0;
  for (int i = 0; i < orderings; ++i) {
    for (size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
    rng.shuffle(order);
    const GscInstance shuffled = inst.with_target_order(order);
    const auto ind = naive_individual(shuffled);
    if (ind.gate_count != out.n_ind)
      throw std::logic_error("baseline_counts: individual cost changed under reordering");
    const auto sol = individual_to_simultaneous(shuffled, ind);
    total += 2.0 * static_cast<double>(sol.gates.size());
  }
  out.n_sim_mean = total / orderings;
  return out;
}

struct MethodOutcome {
  bool found = false;
  int raw = 0, tail = 0, full = 0;
  uint64_t evaluations = 0;
};

struct ResultRow {
  uint64_t instance_seed = 0;
  BaselineCounts baseline;
  std::map<std::string, std::vector<MethodOutcome>> outcomes;  // method -> per repeat
};

namespace detail {

inline MethodOutcome outcome_from(const std::optional<SolutionMetrics>& m, uint64_t evals) {
  MethodOutcome o;
  o.evaluations = evals;
  if (m) {
    o.found = true;
    o.raw = m->raw_count;
    o.tail = m->tail_cancelled_count;
    o.full = m->full_cancelled_count;
  }
  return o;
}

inline int thread_budget() {
  if (const char* env = std::getenv("PAULIFORGE_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

template <typename Job>
void run_pool(std::vector<Job>& jobs) {
  const int workers = std::min<int>(thread_budget(), static_cast<int>(jobs.size()));
  if (workers <= 1) {
    for (auto& j : jobs) j();
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        jobs[i]();
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace detail

inline MethodOutcome run_sa_job(const GscInstance& inst, SaConfig cfg, uint64_t budget,
                                uint64_t seed) {
  cfg.eval_budget = budget;
  cfg.seed = seed;
  const auto res = sa_run(inst, cfg);
  return detail::outcome_from(res.best_metrics, res.evaluations);
}

/// Coarse sweep over the exploration grid with the budget split evenly;
/// reports the best arm by fully cancelled count.
inline MethodOutcome run_mcts_job(const GscInstance& inst, MctsConfig cfg,
                                  const std::vector<double>& grid, uint64_t budget,
                                  uint64_t seed) {
  const std::vector<double> arms = grid.empty() ? std::vector<double>{cfg.exploration} : grid;
  MethodOutcome best;
  uint64_t used = 0;
  for (size_t a = 0; a < arms.size(); ++a) {
    MctsConfig arm = cfg;
    arm.exploration = arms[a];
    arm.eval_budget = budget / arms.size();
    arm.seed = hash_combine(seed, a);
    const auto res = mcts_run(inst, arm);
    used += res.evaluations;
    const auto o = detail::outcome_from(res.best_metrics, res.evaluations);
    if (o.found && (!best.found || o.full < best.full)) {
      const uint64_t keep = used;
      best = o;
      best.evaluations = keep;
    }
  }
  best.evaluations = used;
  return best;
}

inline MethodOutcome run_rl_job(const GscInstance& inst, TrainConfig cfg, uint64_t budget,
                                uint64_t seed, double stop_below_percent = 0.0,
                                std::vector<EpisodeRow>* curve_out = nullptr) {
  cfg.max_env_steps = budget;
  cfg.seed = seed;
  StopCondition stop;
  if (stop_below_percent > 0.0) {
    stop = [stop_below_percent](const TrainResult& r) {
      return r.best[0] && r.best[0]->metric.full_cancelled_count <
                              stop_below_percent / 100.0 * r.naive_individual_counts[0];
    };
  }
  const auto res = train<float>({inst}, cfg, nullptr, stop);
  if (curve_out) *curve_out = res.curve;
  MethodOutcome o;
  o.evaluations = res.env_steps;
  if (res.best[0]) {
    o.found = true;
    o.raw = res.best[0]->metric.raw_count;
    o.tail = res.best[0]->metric.tail_cancelled_count;
    o.full = res.best[0]->metric.full_cancelled_count;
  }
  return o;
}

namespace detail {

inline std::string percent_str(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

}  // namespace detail

/// Runs every (instance, method, repeat) job under the budgets, verifies the
/// reported solutions (each runner verifies internally and throws on
/// failure), and writes table-compatible CSVs plus a JSON manifest.
/// Deterministic: job seeds derive from the spec seed, workers write into
/// preallocated slots, and aggregation is a single-threaded reduce.
inline std::vector<ResultRow> run_suite(const ExperimentSpec& spec, const std::string& out_dir) {
  spec.validate();
  std::filesystem::create_directories(out_dir);

  struct JobResult {
    size_t row;
    std::string method;
    int repeat;
    MethodOutcome outcome;
  };

  std::vector<ResultRow> rows(spec.instance_seeds.size());
  std::vector<GscInstance> instances;
  for (size_t i = 0; i < spec.instance_seeds.size(); ++i) {
    instances.push_back(make_instance(spec.q, spec.t_size, spec.instance_seeds[i]));
    rows[i].instance_seed = spec.instance_seeds[i];
    rows[i].baseline = baseline_counts(instances.back(), spec.orderings,
                                       hash_combine(spec.seed, spec.instance_seeds[i]));
  }

  std::vector<JobResult> results;
  std::vector<std::function<void()>> jobs;
  for (size_t i = 0; i < instances.size(); ++i)
    for (const auto& method : spec.methods) {
      if (method == "naive") continue;
      for (int r = 0; r < spec.repeats; ++r) {
        results.push_back({i, method, r, {}});
        const size_t slot = results.size() - 1;
        const uint64_t job_seed = hash_combine(
            hash_combine(spec.seed, spec.instance_seeds[i]),
            hash_combine(fnv1a(method.data(), method.size()), static_cast<uint64_t>(r)));
        jobs.push_back([&, slot, i, method, r, job_seed]() {
          const GscInstance& inst = instances[i];
          MethodOutcome o;
          if (method == "sa") o = run_sa_job(inst, spec.sa, spec.sa_budget, job_seed);
          else if (method == "mcts")
            o = run_mcts_job(inst, spec.mcts, spec.mcts_grid, spec.mcts_budget, job_seed);
          else if (method == "rl")
            o = run_rl_job(inst, spec.rl, spec.rl_budget, job_seed, spec.rl_stop_below_percent);
          results[slot].outcome = o;
          (void)r;
        });
      }
    }
  detail::run_pool(jobs);

  for (const auto& jr : results) rows[jr.row].outcomes[jr.method].push_back(jr.outcome);

  // absolute counts, one line per job
  {
    std::ofstream out(out_dir + "/results.csv");
    out << "seed;n_sim;n_ind;method;repeat;raw;tail_cancelled;full_cancelled;evaluations;found\n";
    for (const auto& row : rows)
      for (const auto& method : spec.methods) {
        if (method == "naive" || !row.outcomes.count(method)) continue;
        const auto& list = row.outcomes.at(method);
        for (size_t r = 0; r < list.size(); ++r) {
          const auto& o = list[r];
          out << row.instance_seed << ";" << detail::percent_str(row.baseline.n_sim_mean) << ";"
              << row.baseline.n_ind << ";" << method << ";" << r << ";" << o.raw << ";" << o.tail
              << ";" << o.full << ";" << o.evaluations << ";" << (o.found ? 1 : 0) << "\n";
        }
      }
  }

  // comparison table in the paper's column layout, medians over repeats,
  // method^f = tail-cancelled and method^c = fully cancelled, in percent of
  // the naive individual count
  {
    auto median_percent = [](std::vector<MethodOutcome> list, bool full_mode, int n_ind) {
      std::vector<double> vals;
      for (const auto& o : list)
        if (o.found) vals.push_back(100.0 * (full_mode ? o.full : o.tail) / n_ind);
      if (vals.empty()) return std::string("-");
      std::sort(vals.begin(), vals.end());
      return detail::percent_str(vals[vals.size() / 2]);
    };
    std::ofstream out(out_dir + "/table_compare.csv");
    out << "seed;naivelen;naivelenred;rl;mcts;sa;rlred;mctsred;sared\n";
    for (const auto& row : rows) {
      out << row.instance_seed << ";" << detail::percent_str(row.baseline.n_sim_mean) << ";"
          << row.baseline.n_ind;
      for (bool full_mode : {false, true})
        for (const std::string method : {"rl", "mcts", "sa"}) {
          out << ";";
          if (row.outcomes.count(method))
            out << median_percent(row.outcomes.at(method), full_mode, row.baseline.n_ind);
          else
            out << "-";
        }
      out << "\n";
    }
  }

  // manifest with the config hash and seeds
  {
    nlohmann::json man;
    man["spec_hash"] = spec.hash();
    man["q"] = spec.q;
    man["t_size"] = spec.t_size;
    man["instance_seeds"] = spec.instance_seeds;
    man["budgets"] = {{"rl", spec.rl_budget}, {"mcts", spec.mcts_budget}, {"sa", spec.sa_budget}};
    man["methods"] = spec.methods;
    man["repeats"] = spec.repeats;
    man["orderings"] = spec.orderings;
    man["seed"] = spec.seed;
    std::ofstream out(out_dir + "/manifest.json");
    out << man.dump(2) << "\n";
  }
  return rows;
}

/// Generalization study: one agent trained on |S0| uniformly sampled start
/// instances; reports the mean raw count over the trailing window of the
/// learning curve against the mean naive individual count of S0, plus the
/// per-state histogram of best solution length relative to naive.
struct GeneralizationSpec {
  std::vector<int> sizes = {1, 50, 100, 1000};
  uint32_t q = 4;
  uint32_t t_size = 8;
  int agents = 1;
  int episodes = 15000;
  int max_actions = 100;
  int window = 1000;  // trailing episodes averaged
  uint64_t seed = 0;
  TrainConfig rl;
};

struct GeneralizationSummary {
  int s0_size = 0;
  double mean_raw_last_window = 0.0;
  double mean_naive_individual = 0.0;
  uint64_t env_steps = 0;
  // fraction of states whose best verified solution (full cancellations)
  // lands in each ratio band of the naive individual count
  std::vector<std::pair<std::string, double>> ratio_bands;
};

inline GeneralizationSummary run_generalization_size(const GeneralizationSpec& g, int size) {
  std::vector<GscInstance> instances;
  for (int i = 0; i < size; ++i)
    instances.push_back(make_instance(g.q, g.t_size, hash_combine(g.seed, 7777 + i)));

  GeneralizationSummary s;
  s.s0_size = size;

  double naive_sum = 0.0;
  std::vector<double> raw_acc;
  std::vector<std::vector<double>> per_state_ratio(static_cast<size_t>(size));
  for (int agent = 0; agent < g.agents; ++agent) {
    TrainConfig cfg = g.rl;
    cfg.episodes = g.episodes;
    cfg.max_actions = g.max_actions;
    cfg.seed = hash_combine(g.seed, static_cast<uint64_t>(agent) * 131 + size);
    const auto res = train<float>(instances, cfg);
    s.env_steps += res.env_steps;
    const size_t window =
        std::min<size_t>(static_cast<size_t>(g.window), res.curve.size());
    for (size_t i = res.curve.size() - window; i < res.curve.size(); ++i)
      raw_acc.push_back(res.curve[i].raw_count);
    if (agent == 0)
      for (int n : res.naive_individual_counts) naive_sum += n;
    for (size_t i = 0; i < res.best.size(); ++i)
      if (res.best[i])
        per_state_ratio[i].push_back(100.0 * res.best[i]->metric.full_cancelled_count /
                                     res.naive_individual_counts[i]);
  }
  s.mean_naive_individual = naive_sum / size;
  double raw_sum = 0.0;
  for (double v : raw_acc) raw_sum += v;
  s.mean_raw_last_window = raw_acc.empty() ? 0.0 : raw_sum / static_cast<double>(raw_acc.size());

  const std::vector<std::pair<std::string, std::pair<double, double>>> bands = {
      {"<=35", {0.0, 35.0}},   {"35-50", {35.0, 50.0}}, {"50-65", {50.0, 65.0}},
      {"65-80", {65.0, 80.0}}, {"80-100", {80.0, 100.0}}, {">=100", {100.0, 1e9}}};
  for (const auto& [name, range] : bands) {
    int hits = 0, total = 0;
    for (const auto& ratios : per_state_ratio)
      for (double r : ratios) {
        ++total;
        if (r >= range.first && r < range.second) ++hits;
      }
    s.ratio_bands.push_back({name, total ? 100.0 * hits / total : 0.0});
  }
  return s;
}

inline std::vector<GeneralizationSummary> run_generalization(const GeneralizationSpec& g,
                                                             const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<GeneralizationSummary> all;
  for (int size : g.sizes) all.push_back(run_generalization_size(g, size));

  {
    std::ofstream out(out_dir + "/converter_summary.csv");
    out << "numstates;len;naivelen\n";
    for (const auto& s : all)
      out << s.s0_size << ";" << detail::percent_str(s.mean_raw_last_window) << ";"
          << detail::percent_str(s.mean_naive_individual) << "\n";
  }
  {
    std::ofstream out(out_dir + "/z_vs_naive.csv");
    out << "percent;numstates\n";
    if (!all.empty())
      for (const auto& [band, frac] : all.back().ratio_bands)
        out << band << ";" << detail::percent_str(frac) << "\n";
  }
  return all;
}

}  // namespace pauliforge
