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

#include <cstdio>
#include <cstring>
#include <functional>
#include <optional>
#include <unordered_set>

#include "pauliforge/cancel.hpp"
#include "pauliforge/env.hpp"
#include "pauliforge/mlp.hpp"
#include "pauliforge/naive.hpp"
#include "pauliforge/solution.hpp"

namespace pauliforge {

/// One stored experience: encoded state, action, reward, encoded next state,
/// terminal flag. States are kept as int8 (+-1/0) and widened on sampling.
struct Transition {
  std::vector<int8_t> state;
  std::vector<int8_t> next_state;
  int action = 0;
  float reward = 0.0f;
  bool terminal = false;
};

class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity) : capacity_(capacity) {}

  void push(Transition t) {
    if (data_.size() < capacity_) {
      data_.push_back(std::move(t));
    } else {
      data_[head_] = std::move(t);
      head_ = (head_ + 1) % capacity_;
    }
  }

  size_t size() const { return data_.size(); }
  const Transition& at(size_t i) const { return data_[i]; }

  std::vector<size_t> sample(size_t batch, Rng& rng) const {
    std::vector<size_t> idx(batch);
    for (auto& i : idx) i = rng.uniform_below(data_.size());
    return idx;
  }

 private:
  size_t capacity_;
  size_t head_ = 0;
  std::vector<Transition> data_;
};

struct TrainConfig {
  int episodes = 15000;
  int max_actions = 1000;  // episode cutoff; gate count clamps to 2x this
  double gamma = 0.75;
  double epsilon0 = 0.9999;
  double epsilon_min = 0.01;
  double learning_rate = 1e-5;
  int replay_capacity = 50000;
  int batch_size = 64;
  int warmup = 1000;        // env steps before learning starts
  int target_sync = 2500;   // env steps between target synchronizations
  int hidden_width = 500;
  int hidden_layers = 3;
  uint64_t seed = 0;
  uint64_t max_env_steps = 0;  // 0 = no budget cap
  RewardConfig reward;

  /// Preset used for the budget-matched method comparison.
  static TrainConfig comparison_preset() {
    TrainConfig c;
    c.episodes = 5000;
    c.max_actions = 100;
    c.max_env_steps = 300000;
    return c;
  }

  double epsilon_at(int episode) const {
    if (episodes <= 0) return epsilon_min;
    const double f = std::pow(epsilon_min / epsilon0,
                              static_cast<double>(episode) / static_cast<double>(episodes));
    return std::max(epsilon_min, epsilon0 * f);
  }

  uint64_t hash() const {
    uint64_t h = fnv1a(&episodes, sizeof(episodes));
    h = fnv1a(&max_actions, sizeof(max_actions), h);
    h = fnv1a(&gamma, sizeof(gamma), h);
    h = fnv1a(&epsilon0, sizeof(epsilon0), h);
    h = fnv1a(&epsilon_min, sizeof(epsilon_min), h);
    h = fnv1a(&learning_rate, sizeof(learning_rate), h);
    h = fnv1a(&replay_capacity, sizeof(replay_capacity), h);
    h = fnv1a(&batch_size, sizeof(batch_size), h);
    h = fnv1a(&warmup, sizeof(warmup), h);
    h = fnv1a(&target_sync, sizeof(target_sync), h);
    h = fnv1a(&hidden_width, sizeof(hidden_width), h);
    h = fnv1a(&hidden_layers, sizeof(hidden_layers), h);
    h = fnv1a(&seed, sizeof(seed), h);
    h = fnv1a(&reward, sizeof(reward), h);
    return h;
  }
};

/// Policy and target copies of the value network plus the optimizer state.
template <typename Scalar = float>
struct QFunction {
  Mlp<Scalar> policy;
  Mlp<Scalar> target;
  Adam<Scalar> opt;

  QFunction() = default;
  QFunction(uint32_t q, uint32_t t_max, const TrainConfig& cfg) {
    std::vector<int> widths = {static_cast<int>(4 * q * t_max)};
    for (int l = 0; l < cfg.hidden_layers; ++l) widths.push_back(cfg.hidden_width);
    widths.push_back(static_cast<int>(4 * q - 2));
    policy = Mlp<Scalar>(widths, hash_combine(cfg.seed, 0x9e3779b9));
    target = policy;
    opt = Adam<Scalar>(policy);
  }
};

namespace detail {

template <typename Scalar>
typename Mlp<Scalar>::Mat to_matrix(const std::vector<const std::vector<int8_t>*>& cols) {
  typename Mlp<Scalar>::Mat m(cols.empty() ? 0 : cols[0]->size(), cols.size());
  for (size_t c = 0; c < cols.size(); ++c)
    for (size_t r = 0; r < cols[c]->size(); ++r)
      m(static_cast<long>(r), static_cast<long>(c)) = static_cast<Scalar>((*cols[c])[r]);
  return m;
}

template <typename Scalar>
typename Mlp<Scalar>::Vec to_vector(const std::vector<int8_t>& v) {
  typename Mlp<Scalar>::Vec x(v.size());
  for (size_t i = 0; i < v.size(); ++i) x(static_cast<long>(i)) = static_cast<Scalar>(v[i]);
  return x;
}

}  // namespace detail

/// Y = r for terminal transitions, otherwise
/// r + gamma * Q_target(s', argmax_a Q_policy(s', a)): the policy network
/// selects, the target network evaluates.
template <typename Scalar>
double ddqn_target(const Transition& tr, double gamma, const Mlp<Scalar>& policy,
                   const Mlp<Scalar>& target) {
  if (tr.terminal) return tr.reward;
  const auto x = detail::to_vector<Scalar>(tr.next_state);
  typename Mlp<Scalar>::Mat qp = policy.forward(x);
  long best = 0;
  qp.col(0).maxCoeff(&best);
  typename Mlp<Scalar>::Mat qt = target.forward(x);
  return tr.reward + gamma * static_cast<double>(qt(best, 0));
}

/// One optimizer step on a batch: mean squared error between Q(s, a) and the
/// DDQN target, gradients applied with Adam. Returns the loss.
template <typename Scalar>
double train_batch(QFunction<Scalar>& q, const ReplayBuffer& replay,
                   const std::vector<size_t>& batch, double gamma, double lr) {
  using Mat = typename Mlp<Scalar>::Mat;
  const long b = static_cast<long>(batch.size());
  if (b == 0) throw std::invalid_argument("train_batch: empty batch");

  std::vector<const std::vector<int8_t>*> s_cols, s2_cols;
  for (size_t i : batch) {
    s_cols.push_back(&replay.at(i).state);
    s2_cols.push_back(&replay.at(i).next_state);
  }
  const Mat s = detail::to_matrix<Scalar>(s_cols);
  const Mat s2 = detail::to_matrix<Scalar>(s2_cols);

  const Mat q_policy_s2 = q.policy.forward(s2);
  const Mat q_target_s2 = q.target.forward(s2);

  typename Mlp<Scalar>::Cache cache;
  const Mat q_s = q.policy.forward_cached(s, cache);

  Mat d_out = Mat::Zero(q_s.rows(), q_s.cols());
  double loss = 0.0;
  for (long c = 0; c < b; ++c) {
    const Transition& tr = replay.at(batch[static_cast<size_t>(c)]);
    double y = tr.reward;
    if (!tr.terminal) {
      long best = 0;
      q_policy_s2.col(c).maxCoeff(&best);
      y += gamma * static_cast<double>(q_target_s2(best, c));
    }
    const double pred = static_cast<double>(q_s(tr.action, c));
    const double err = pred - y;
    loss += err * err;
    d_out(tr.action, c) = static_cast<Scalar>(2.0 * err / static_cast<double>(b));
  }
  loss /= static_cast<double>(b);

  auto grads = q.policy.zero_grads();
  q.policy.backward(cache, d_out, grads);
  q.opt.step(q.policy, grads, lr);
  return loss;
}

struct EpisodeRow {
  int episode = 0;
  int raw_count = 0;        // 2x steps, clamped to 2x max_actions on timeout
  int cancelled_count = 0;  // fully cancelled count of the episode solution
  double epsilon = 0.0;
  double loss = 0.0;
  int instance = 0;
};

struct BestSolution {
  SimultaneousSolution solution;
  SolutionMetrics metric;
};

struct TrainResult {
  std::vector<EpisodeRow> curve;
  std::vector<std::optional<BestSolution>> best;  // per training instance
  std::vector<int> naive_individual_counts;
  uint64_t env_steps = 0;  // N_RL: number of reward queries
  int episodes_run = 0;
};

using StopCondition = std::function<bool(const TrainResult&)>;

/// DDQN training over one or more starting instances (all sharing Q and the
/// slot count). Per episode: sample a start uniformly, roll out eps-greedy,
/// store transitions, learn every step once the warmup has passed, and sync
/// the target every target_sync steps. Verified best solutions are retained
/// per instance. The optional stop condition is polled between episodes;
/// max_env_steps caps the total number of reward queries.
template <typename Scalar = float>
TrainResult train(const std::vector<GscInstance>& instances, const TrainConfig& cfg,
                  QFunction<Scalar>* warm = nullptr, const StopCondition& stop = {}) {
  if (instances.empty()) throw std::invalid_argument("train: no instances");
  const uint32_t q = instances.front().q;
  size_t t_max = 0;
  for (const auto& inst : instances) {
    if (inst.q != q) throw std::invalid_argument("train: instances must share Q");
    t_max = std::max(t_max, inst.targets.size());
  }
  const int n_actions = static_cast<int>(4 * q - 2);

  QFunction<Scalar> local(q, static_cast<uint32_t>(t_max), cfg);
  QFunction<Scalar>& qf = warm ? *warm : local;

  TrainResult res;
  res.best.resize(instances.size());
  for (const auto& inst : instances)
    res.naive_individual_counts.push_back(naive_individual(inst).gate_count);

  ReplayBuffer replay(static_cast<size_t>(cfg.replay_capacity));
  Rng rng(hash_combine(cfg.seed, 0x5bd1e995));

  for (int episode = 0; episode < cfg.episodes; ++episode) {
    if (stop && stop(res)) break;
    if (cfg.max_env_steps && res.env_steps >= cfg.max_env_steps) break;

    const size_t pick = instances.size() == 1 ? 0 : rng.uniform_below(instances.size());
    const GscInstance& inst = instances[pick];
    const double eps = cfg.epsilon_at(episode);

    EnvState state = reset_env(inst);
    auto enc = encode(state, q, static_cast<uint32_t>(t_max));
    GateWord actions_taken;
    double loss_sum = 0.0;
    int loss_count = 0;
    bool solved = state.terminal();

    while (!solved && state.step_count < cfg.max_actions) {
      if (cfg.max_env_steps && res.env_steps >= cfg.max_env_steps) break;
      const auto qvals = qf.policy.forward(detail::to_vector<Scalar>(enc));
      std::vector<Scalar> qv(qvals.data(), qvals.data() + n_actions);
      const int action = epsilon_greedy<Scalar>(qv, eps, rng);

      const StepResult sr = env_step(state, action, inst, cfg.reward);
      ++res.env_steps;
      actions_taken.push_back(inst.mapping_gates[static_cast<size_t>(action)]);
      auto enc2 = encode(state, q, static_cast<uint32_t>(t_max));
      replay.push({enc, enc2, action, static_cast<float>(sr.reward), sr.terminal});
      enc = std::move(enc2);
      solved = sr.terminal;

      if (replay.size() >= static_cast<size_t>(cfg.warmup)) {
        const auto batch = replay.sample(static_cast<size_t>(cfg.batch_size), rng);
        loss_sum += train_batch(qf, replay, batch, cfg.gamma, cfg.learning_rate);
        ++loss_count;
      }
      if (res.env_steps % static_cast<uint64_t>(cfg.target_sync) == 0)
        qf.target.copy_parameters_from(qf.policy);
    }

    EpisodeRow row;
    row.episode = episode;
    row.epsilon = eps;
    row.loss = loss_count ? loss_sum / loss_count : 0.0;
    row.instance = static_cast<int>(pick);
    if (solved) {
      const auto v = verify_gscd(inst, actions_taken, static_cast<int>(actions_taken.size()));
      if (!v.yes) throw std::logic_error("train: resolved episode failed verification");
      auto sol = to_solution(actions_taken, v);
      const auto m = metrics(sol, res.naive_individual_counts[pick]);
      row.raw_count = m.raw_count;
      row.cancelled_count = m.full_cancelled_count;
      auto& slot = res.best[pick];
      if (!slot || m.full_cancelled_count < slot->metric.full_cancelled_count ||
          (m.full_cancelled_count == slot->metric.full_cancelled_count &&
           m.raw_count < slot->metric.raw_count))
        slot = BestSolution{std::move(sol), m};
    } else {
      row.raw_count = 2 * cfg.max_actions;
      row.cancelled_count = 2 * cfg.max_actions;
    }
    res.curve.push_back(row);
    res.episodes_run = episode + 1;
  }
  return res;
}

struct GreedyResult {
  bool resolved = false;
  bool stuck = false;  // deterministic loop detected
  SimultaneousSolution solution;
  int steps = 0;
};

/// eps = 0 rollout. The policy and the transition function are both
/// deterministic, so a repeated state means the agent loops forever; that is
/// reported as stuck instead of burning the whole budget.
template <typename Scalar>
GreedyResult evaluate_greedy(const QFunction<Scalar>& qf, const GscInstance& inst,
                             int max_actions, uint32_t t_max = 0) {
  if (t_max == 0) t_max = static_cast<uint32_t>(inst.targets.size());
  GreedyResult out;
  EnvState state = reset_env(inst);
  GateWord actions_taken;
  std::unordered_set<uint64_t> seen;
  while (!state.terminal() && state.step_count < max_actions) {
    const auto enc = encode(state, inst.q, t_max);
    const uint64_t h = fnv1a(enc.data(), enc.size());
    if (!seen.insert(h).second) {
      out.stuck = true;
      break;
    }
    const auto qvals = qf.policy.forward(detail::to_vector<Scalar>(enc));
    int best = 0;
    for (int i = 1; i < qvals.rows(); ++i)
      if (qvals(i, 0) > qvals(best, 0)) best = i;
    RewardConfig rc;
    env_step(state, best, inst, rc);
    actions_taken.push_back(inst.mapping_gates[static_cast<size_t>(best)]);
  }
  out.steps = state.step_count;
  if (state.terminal()) {
    const auto v = verify_gscd(inst, actions_taken, static_cast<int>(actions_taken.size()));
    out.resolved = v.yes;
    out.solution = to_solution(std::move(actions_taken), v);
  }
  return out;
}

/// Versioned binary checkpoint: parameters, optimizer state, episode
/// counter and the config hash.
template <typename Scalar>
void save_checkpoint(const QFunction<Scalar>& qf, const TrainConfig& cfg, int episode,
                     const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("save_checkpoint: cannot open " + path);
  auto put_u64 = [&](uint64_t v) { std::fwrite(&v, sizeof(v), 1, f); };
  auto put_mat = [&](const auto& m) {
    put_u64(static_cast<uint64_t>(m.rows()));
    put_u64(static_cast<uint64_t>(m.cols()));
    for (long c = 0; c < m.cols(); ++c)
      for (long r = 0; r < m.rows(); ++r) {
        const double v = static_cast<double>(m(r, c));
        std::fwrite(&v, sizeof(v), 1, f);
      }
  };
  std::fwrite("PFQ1", 4, 1, f);
  put_u64(cfg.hash());
  put_u64(static_cast<uint64_t>(episode));
  put_u64(qf.opt.step_count());
  put_u64(qf.policy.widths().size());
  for (int w : qf.policy.widths()) put_u64(static_cast<uint64_t>(w));
  auto& q = const_cast<QFunction<Scalar>&>(qf);
  for (size_t l = 0; l < qf.policy.layers(); ++l) {
    put_mat(q.policy.weights()[l]);
    put_mat(q.policy.biases()[l]);
    put_mat(q.target.weights()[l]);
    put_mat(q.target.biases()[l]);
    put_mat(q.opt.moment1_w()[l]);
    put_mat(q.opt.moment2_w()[l]);
    put_mat(q.opt.moment1_b()[l]);
    put_mat(q.opt.moment2_b()[l]);
  }
  std::fclose(f);
}

template <typename Scalar>
int load_checkpoint(QFunction<Scalar>& qf, const TrainConfig& cfg, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("load_checkpoint: cannot open " + path);
  auto get_u64 = [&]() {
    uint64_t v = 0;
    if (std::fread(&v, sizeof(v), 1, f) != 1)
      throw std::runtime_error("load_checkpoint: truncated file");
    return v;
  };
  auto get_into = [&](auto& m) {
    const long rows = static_cast<long>(get_u64());
    const long cols = static_cast<long>(get_u64());
    if (rows != m.rows() || cols != m.cols())
      throw std::runtime_error("load_checkpoint: tensor shape mismatch");
    for (long c = 0; c < cols; ++c)
      for (long r = 0; r < rows; ++r) {
        double v;
        if (std::fread(&v, sizeof(v), 1, f) != 1)
          throw std::runtime_error("load_checkpoint: truncated tensor");
        m(r, c) = static_cast<Scalar>(v);
      }
  };
  char magic[4];
  if (std::fread(magic, 4, 1, f) != 1 || std::memcmp(magic, "PFQ1", 4) != 0)
    throw std::runtime_error("load_checkpoint: bad magic");
  if (get_u64() != cfg.hash()) throw std::runtime_error("load_checkpoint: config hash mismatch");
  const int episode = static_cast<int>(get_u64());
  qf.opt.set_step_count(get_u64());
  const size_t widths = get_u64();
  for (size_t i = 0; i < widths; ++i) {
    const uint64_t w = get_u64();
    if (static_cast<int>(w) != qf.policy.widths()[i])
      throw std::runtime_error("load_checkpoint: width mismatch");
  }
  for (size_t l = 0; l < qf.policy.layers(); ++l) {
    get_into(qf.policy.weights()[l]);
    get_into(qf.policy.biases()[l]);
    get_into(qf.target.weights()[l]);
    get_into(qf.target.biases()[l]);
    get_into(qf.opt.moment1_w()[l]);
    get_into(qf.opt.moment2_w()[l]);
    get_into(qf.opt.moment1_b()[l]);
    get_into(qf.opt.moment2_b()[l]);
  }
  std::fclose(f);
  return episode;
}

/// Learning-curve rows as semicolon CSV.
inline void write_curve(const std::vector<EpisodeRow>& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_curve: cannot open " + path);
  out << "episode;raw_count;cancelled_count;epsilon;loss\n";
  char buf[64];
  for (const auto& r : curve) {
    std::snprintf(buf, sizeof(buf), "%.6f", r.epsilon);
    out << r.episode << ";" << r.raw_count << ";" << r.cancelled_count << ";" << buf << ";";
    std::snprintf(buf, sizeof(buf), "%.8g", r.loss);
    out << buf << "\n";
  }
}

}  // namespace pauliforge
