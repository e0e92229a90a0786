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

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "pauliforge/bench.hpp"
#include "pauliforge/reduction.hpp"

using namespace pauliforge;

namespace {

void write_metrics_row(const std::string& path, const std::string& method,
                       const MethodOutcome& o, const BaselineCounts& base) {
  std::ofstream out(path);
  out << "method;n_sim;n_ind;raw;tail_cancelled;full_cancelled;evaluations;found\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", base.n_sim_mean);
  out << method << ";" << buf << ";" << base.n_ind << ";" << o.raw << ";" << o.tail << ";"
      << o.full << ";" << o.evaluations << ";" << (o.found ? 1 : 0) << "\n";
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pauliforge: gate-set-conversion compiler and search methods"};
  app.require_subcommand(1);

  // gen-instance
  auto* gen = app.add_subcommand("gen-instance", "generate a random GSC instance file");
  uint32_t gen_q = 4, gen_t = 8;
  uint64_t gen_seed = 0;
  std::string gen_out = "instance.txt";
  gen->add_option("--q", gen_q, "qubit count");
  gen->add_option("--t-size", gen_t, "target set size");
  gen->add_option("--seed", gen_seed, "instance seed");
  gen->add_option("--out", gen_out, "output file");

  // compile-naive
  auto* naive_cmd = app.add_subcommand("compile-naive", "ladder-compile an instance");
  std::string cn_instance, cn_out;
  int cn_orderings = 1;
  uint64_t cn_seed = 0;
  naive_cmd->add_option("--instance", cn_instance, "instance file")->required();
  naive_cmd->add_option("--out", cn_out, "solution file to write");
  naive_cmd->add_option("--orderings", cn_orderings, "orderings for the N_sim average");
  naive_cmd->add_option("--seed", cn_seed, "ordering shuffle seed");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the GSCD decision check");
  std::string v_instance, v_solution;
  int v_k = -1;
  verify_cmd->add_option("--instance", v_instance, "instance file")->required();
  verify_cmd->add_option("--solution", v_solution, "solution file")->required();
  verify_cmd->add_option("-k,--steps", v_k, "use only the first k gates");

  // train-ddqn
  auto* rl_cmd = app.add_subcommand("train-ddqn", "train a DDQN agent on instances");
  std::vector<std::string> rl_instances;
  std::string rl_out = "rl_out", rl_config;
  int rl_episodes = -1, rl_max_actions = -1;
  uint64_t rl_seed = 0, rl_budget = 0;
  double rl_lr = -1;
  rl_cmd->add_option("--instance", rl_instances, "instance file(s)")->required();
  rl_cmd->add_option("--out", rl_out, "output directory");
  rl_cmd->add_option("--config", rl_config, "JSON config overrides");
  rl_cmd->add_option("--episodes", rl_episodes, "training episodes");
  rl_cmd->add_option("--max-actions", rl_max_actions, "episode action cap");
  rl_cmd->add_option("--seed", rl_seed, "agent seed");
  rl_cmd->add_option("--budget", rl_budget, "environment step cap (0 = none)");
  rl_cmd->add_option("--lr", rl_lr, "learning rate");

  // run-sa
  auto* sa_cmd = app.add_subcommand("run-sa", "simulated annealing over gate strings");
  std::string sa_instance, sa_out = "sa_out", sa_config, sa_start = "naive";
  uint64_t sa_seed = 0, sa_budget = 500000;
  double sa_tau0 = 0.25;
  sa_cmd->add_option("--instance", sa_instance, "instance file")->required();
  sa_cmd->add_option("--out", sa_out, "output directory");
  sa_cmd->add_option("--config", sa_config, "JSON config");
  sa_cmd->add_option("--seed", sa_seed, "run seed");
  sa_cmd->add_option("--budget", sa_budget, "cost evaluation budget");
  sa_cmd->add_option("--tau0", sa_tau0, "initial temperature");
  sa_cmd->add_option("--start", sa_start, "start mode: naive or empty");

  // run-mcts
  auto* mcts_cmd = app.add_subcommand("run-mcts", "Monte Carlo tree search");
  std::string mc_instance, mc_out = "mcts_out", mc_config;
  uint64_t mc_seed = 0, mc_budget = 400000;
  double mc_c = 85.0;
  int mc_depth = 100, mc_stop = 100;
  mcts_cmd->add_option("--instance", mc_instance, "instance file")->required();
  mcts_cmd->add_option("--out", mc_out, "output directory");
  mcts_cmd->add_option("--config", mc_config, "JSON config");
  mcts_cmd->add_option("--seed", mc_seed, "run seed");
  mcts_cmd->add_option("--budget", mc_budget, "evaluation budget");
  mcts_cmd->add_option("--exploration", mc_c, "UCT exploration constant");
  mcts_cmd->add_option("--max-depth", mc_depth, "tree depth cap");
  mcts_cmd->add_option("--stop-solutions", mc_stop, "stop after this many solutions");

  // reduce-hp
  auto* reduce_cmd = app.add_subcommand("reduce-hp", "HP -> HPS -> GSCD reduction");
  std::string rh_graph, rh_out = "reduced.txt";
  bool rh_solve = false;
  reduce_cmd->add_option("--graph", rh_graph, "graph file")->required();
  reduce_cmd->add_option("--out", rh_out, "reduced instance file");
  reduce_cmd->add_flag("--solve", rh_solve, "also brute-force the reduced instance");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "budget-matched method comparison");
  std::string b_spec, b_out = "bench_out";
  bench_cmd->add_option("--spec", b_spec, "experiment spec JSON")->required();
  bench_cmd->add_option("--out", b_out, "output directory");

  // generalize
  auto* gname = app.add_subcommand("generalize", "multi-instance training study");
  std::string g_spec, g_out = "generalize_out";
  gname->add_option("--spec", g_spec, "generalization spec JSON")->required();
  gname->add_option("--out", g_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      write_instance(make_instance(gen_q, gen_t, gen_seed), gen_out);
      std::cout << "wrote " << gen_out << "\n";
    } else if (*naive_cmd) {
      const auto inst = read_instance(cn_instance);
      const auto ind = naive_individual(inst);
      const auto sol = individual_to_simultaneous(inst, ind);
      const auto m = metrics(sol, ind.gate_count);
      if (!cn_out.empty()) write_solution(sol, cn_out);
      const auto base = baseline_counts(inst, cn_orderings, cn_seed);
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.1f", base.n_sim_mean);
      std::cout << "N_ind=" << ind.gate_count << " N_sim_raw=" << m.raw_count
                << " N_sim_mean(" << cn_orderings << ")=" << buf
                << " tail_cancelled=" << m.tail_cancelled_count
                << " full_cancelled=" << m.full_cancelled_count << "\n";
    } else if (*verify_cmd) {
      const auto inst = read_instance(v_instance);
      const auto sol = read_solution(v_solution);
      const int k = v_k >= 0 ? v_k : static_cast<int>(sol.gates.size());
      const auto res = verify_gscd(inst, sol.gates, k);
      if (res.yes) {
        std::cout << "YES";
        for (size_t i = 0; i < res.removal_order.size(); ++i)
          std::cout << (i ? "," : " removal_order=") << res.removal_order[i];
        std::cout << "\n";
        return 0;
      }
      std::cout << "NO survivors=" << res.survivors.size() << "\n";
      return 1;
    } else if (*rl_cmd) {
      std::vector<GscInstance> instances;
      for (const auto& path : rl_instances) instances.push_back(read_instance(path));
      TrainConfig cfg;
      if (!rl_config.empty()) {
        const auto j = load_json(rl_config);
        if (j.contains("episodes")) cfg.episodes = j["episodes"];
        if (j.contains("max_actions")) cfg.max_actions = j["max_actions"];
        if (j.contains("learning_rate")) cfg.learning_rate = j["learning_rate"];
        if (j.contains("gamma")) cfg.gamma = j["gamma"];
        if (j.contains("batch_size")) cfg.batch_size = j["batch_size"];
        if (j.contains("warmup")) cfg.warmup = j["warmup"];
        if (j.contains("target_sync")) cfg.target_sync = j["target_sync"];
      }
      if (rl_episodes > 0) cfg.episodes = rl_episodes;
      if (rl_max_actions > 0) cfg.max_actions = rl_max_actions;
      if (rl_lr > 0) cfg.learning_rate = rl_lr;
      cfg.seed = rl_seed;
      cfg.max_env_steps = rl_budget;

      std::filesystem::create_directories(rl_out);
      uint32_t t_max = 0;
      for (const auto& inst : instances)
        t_max = std::max<uint32_t>(t_max, static_cast<uint32_t>(inst.targets.size()));
      QFunction<float> qf(instances.front().q, t_max, cfg);
      const auto res = train<float>(instances, cfg, &qf);
      write_curve(res.curve, rl_out + "/curve.csv");
      save_checkpoint(qf, cfg, res.episodes_run, rl_out + "/checkpoint.bin");
      nlohmann::json summary;
      summary["episodes"] = res.episodes_run;
      summary["env_steps"] = res.env_steps;
      summary["config_hash"] = cfg.hash();
      for (size_t i = 0; i < res.best.size(); ++i) {
        nlohmann::json b;
        b["instance"] = i;
        b["naive_individual"] = res.naive_individual_counts[i];
        if (res.best[i]) {
          b["raw"] = res.best[i]->metric.raw_count;
          b["tail_cancelled"] = res.best[i]->metric.tail_cancelled_count;
          b["full_cancelled"] = res.best[i]->metric.full_cancelled_count;
          write_solution(res.best[i]->solution,
                         rl_out + "/best_solution_" + std::to_string(i) + ".txt");
        }
        summary["best"].push_back(b);
      }
      std::ofstream(rl_out + "/summary.json") << summary.dump(2) << "\n";
      std::cout << "trained " << res.episodes_run << " episodes, " << res.env_steps
                << " env steps -> " << rl_out << "\n";
    } else if (*sa_cmd) {
      const auto inst = read_instance(sa_instance);
      SaConfig cfg;
      if (!sa_config.empty()) {
        const auto j = load_json(sa_config);
        if (j.contains("tau0")) cfg.tau0 = j["tau0"];
        if (j.contains("anneal_steps")) cfg.anneal_steps = j["anneal_steps"];
        if (j.contains("slots")) cfg.slots = j["slots"];
        if (j.contains("start"))
          cfg.start = j["start"] == "empty" ? SaConfig::Start::Empty : SaConfig::Start::Naive;
      }
      cfg.tau0 = sa_tau0;
      if (sa_start == "empty") cfg.start = SaConfig::Start::Empty;
      cfg.eval_budget = sa_budget;
      cfg.seed = sa_seed;
      std::filesystem::create_directories(sa_out);
      const auto res = sa_run(inst, cfg);
      if (res.best_solution) write_solution(*res.best_solution, sa_out + "/solution.txt");
      const auto base = baseline_counts(inst, 1, 0);
      write_metrics_row(sa_out + "/metrics.csv", "sa",
                        detail::outcome_from(res.best_metrics, res.evaluations), base);
      std::cout << "sa: best_cost=" << res.best_cost << " best_len=" << res.best_body_length
                << " evaluations=" << res.evaluations << " -> " << sa_out << "\n";
      return res.best_cost == 0 ? 0 : 1;
    } else if (*mcts_cmd) {
      const auto inst = read_instance(mc_instance);
      MctsConfig cfg;
      if (!mc_config.empty()) {
        const auto j = load_json(mc_config);
        if (j.contains("exploration")) cfg.exploration = j["exploration"];
        if (j.contains("max_depth")) cfg.max_depth = j["max_depth"];
        if (j.contains("stop_solutions")) cfg.stop_solutions = j["stop_solutions"];
        if (j.contains("cumulative_value")) cfg.cumulative_value = j["cumulative_value"];
      }
      cfg.exploration = mc_c;
      cfg.max_depth = mc_depth;
      cfg.stop_solutions = mc_stop;
      cfg.eval_budget = mc_budget;
      cfg.seed = mc_seed;
      std::filesystem::create_directories(mc_out);
      const auto res = mcts_run(inst, cfg);
      if (res.best_solution) write_solution(*res.best_solution, mc_out + "/solution.txt");
      const auto base = baseline_counts(inst, 1, 0);
      write_metrics_row(mc_out + "/metrics.csv", "mcts",
                        detail::outcome_from(res.best_metrics, res.evaluations), base);
      std::cout << "mcts: solutions=" << res.solutions_found
                << " best_len=" << res.best_body_length << " evaluations=" << res.evaluations
                << " -> " << mc_out << "\n";
      return res.best_solution ? 0 : 1;
    } else if (*reduce_cmd) {
      Graph g = read_graph(rh_graph);
      if (!g.start) g = hp2hps(g);
      const auto red = hps2gscd(g);
      write_gscd_instance(red.instance, rh_out);
      std::cout << "Q=" << red.instance.q << " |T|=" << red.instance.targets.size()
                << " |M|=" << red.instance.pattern_gates.size()
                << " budget=" << red.instance.budget << " -> " << rh_out << "\n";
      if (rh_solve) {
        const auto found =
            brute_gscd(red.instance, static_cast<int>(red.instance.targets.size()));
        if (found.word) {
          std::cout << "solvable in " << found.word->size() << " gates:";
          for (uint64_t p : *found.word)
            std::cout << " " << pattern_to_string(p, red.instance.q);
          std::cout << "\n";
        } else {
          std::cout << (found.budget_exceeded ? "search budget exceeded" : "unsolvable within |T|")
                    << "\n";
        }
      }
    } else if (*bench_cmd) {
      const auto spec = read_spec(b_spec);
      run_suite(spec, b_out);
      std::cout << "bench -> " << b_out << "\n";
    } else if (*gname) {
      const auto j = load_json(g_spec);
      GeneralizationSpec g;
      if (j.contains("sizes")) g.sizes = j["sizes"].get<std::vector<int>>();
      if (j.contains("q")) g.q = j["q"];
      if (j.contains("t_size")) g.t_size = j["t_size"];
      if (j.contains("agents")) g.agents = j["agents"];
      if (j.contains("episodes")) g.episodes = j["episodes"];
      if (j.contains("max_actions")) g.max_actions = j["max_actions"];
      if (j.contains("window")) g.window = j["window"];
      if (j.contains("seed")) g.seed = j["seed"];
      if (j.contains("learning_rate")) g.rl.learning_rate = j["learning_rate"];
      const auto all = run_generalization(g, g_out);
      for (const auto& s : all)
        std::cout << "|S0|=" << s.s0_size << " mean_raw=" << s.mean_raw_last_window
                  << " mean_N_ind=" << s.mean_naive_individual << "\n";
      std::cout << "generalize -> " << g_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
