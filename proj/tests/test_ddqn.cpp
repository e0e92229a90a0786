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

#include "pauliforge/ddqn.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>

using namespace pauliforge;

namespace {

TrainConfig tiny_config() {
  TrainConfig cfg;
  cfg.hidden_width = 32;
  cfg.hidden_layers = 2;
  cfg.episodes = 60;
  cfg.max_actions = 40;
  cfg.warmup = 50;
  cfg.batch_size = 16;
  cfg.target_sync = 100;
  cfg.learning_rate = 1e-3;
  cfg.seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("ddqn target formula") {
  Mlp<double> policy({4, 8, 3}, 1);
  Mlp<double> target({4, 8, 3}, 2);

  Transition tr;
  tr.state = {1, -1, 1, -1};
  tr.next_state = {1, 1, -1, -1};
  tr.reward = 1.0f;

  tr.terminal = true;
  CHECK(ddqn_target(tr, 0.75, policy, target) == 1.0);

  tr.terminal = false;
  CHECK(ddqn_target(tr, 0.0, policy, target) == 1.0);

  // when the nets share parameters this is the plain DQN target
  Mlp<double> copy = policy;
  const auto x = detail::to_vector<double>(tr.next_state);
  const double dqn = tr.reward + 0.75 * policy.forward(x).maxCoeff();
  CHECK(ddqn_target(tr, 0.75, policy, copy) == Catch::Approx(dqn));

  // decoupled selection: the policy argmax picks the entry the target
  // evaluates
  const auto qp = policy.forward(x);
  long best = 0;
  qp.col(0).maxCoeff(&best);
  const double expected = tr.reward + 0.75 * target.forward(x)(best, 0);
  CHECK(ddqn_target(tr, 0.75, policy, target) == Catch::Approx(expected));
}

TEST_CASE("train_batch with perfect predictions changes nothing") {
  // float nets so the stored reward can equal the prediction bit for bit;
  // any nonzero residual would be blown up to a full lr-sized Adam step
  const auto inst = make_instance(2, 2, 0);
  TrainConfig cfg = tiny_config();
  QFunction<float> qf(2, 2, cfg);

  ReplayBuffer replay(16);
  Rng rng(3);
  // rewards come from the same batched forward pass train_batch will run,
  // so predictions match bit for bit
  EnvState st = reset_env(inst);
  const auto enc = encode(st, 2, 2);
  Mlp<float>::Mat s(enc.size(), 8);
  for (int c = 0; c < 8; ++c)
    for (size_t r = 0; r < enc.size(); ++r) s(static_cast<long>(r), c) = enc[r];
  const auto q = qf.policy.forward(s);
  for (int i = 0; i < 8; ++i) {
    Transition tr;
    tr.state = enc;
    tr.next_state = std::vector<int8_t>(enc.size(), 0);
    tr.action = static_cast<int>(rng.uniform_below(6));
    tr.reward = q(tr.action, i);
    tr.terminal = true;
    replay.push(std::move(tr));
  }
  const auto before = qf.policy.weights();
  std::vector<size_t> batch = {0, 1, 2, 3, 4, 5, 6, 7};
  const double loss = train_batch(qf, replay, batch, 0.75, 0.1);
  CHECK(loss == 0.0);
  for (size_t l = 0; l < qf.policy.layers(); ++l)
    CHECK((qf.policy.weights()[l] - before[l]).cwiseAbs().maxCoeff() == 0.0f);
}

TEST_CASE("loss decreases on a frozen synthetic batch") {
  TrainConfig cfg = tiny_config();
  QFunction<double> qf(2, 2, cfg);
  ReplayBuffer replay(32);
  Rng rng(5);
  for (int i = 0; i < 32; ++i) {
    Transition tr;
    tr.state.resize(16);
    for (auto& v : tr.state) v = static_cast<int8_t>(rng.uniform_below(3)) - 1;
    tr.next_state = std::vector<int8_t>(16, 0);
    tr.action = static_cast<int>(rng.uniform_below(6));
    tr.reward = static_cast<float>(rng.uniform_in(-1, 1));
    tr.terminal = true;
    replay.push(std::move(tr));
  }
  std::vector<size_t> batch(32);
  for (size_t i = 0; i < 32; ++i) batch[i] = i;
  const double first = train_batch(qf, replay, batch, 0.75, 1e-2);
  double last = first;
  for (int i = 0; i < 100; ++i) last = train_batch(qf, replay, batch, 0.75, 1e-2);
  CHECK(last < first);
}

TEST_CASE("target network only changes on synchronization") {
  TrainConfig cfg = tiny_config();
  QFunction<double> qf(2, 2, cfg);
  ReplayBuffer replay(8);
  Rng rng(1);
  for (int i = 0; i < 8; ++i) {
    Transition tr;
    tr.state.resize(16, 1);
    tr.next_state.resize(16, 0);
    tr.action = i % 6;
    tr.reward = 0.5f;
    tr.terminal = true;
    replay.push(std::move(tr));
  }
  const auto target_before = qf.target.weights();
  std::vector<size_t> batch = {0, 1, 2, 3};
  for (int i = 0; i < 5; ++i) train_batch(qf, replay, batch, 0.75, 1e-2);
  for (size_t l = 0; l < qf.target.layers(); ++l)
    CHECK((qf.target.weights()[l] - target_before[l]).cwiseAbs().maxCoeff() == 0.0);
  qf.target.copy_parameters_from(qf.policy);
  bool moved = false;
  for (size_t l = 0; l < qf.target.layers(); ++l)
    moved |= (qf.target.weights()[l] - target_before[l]).cwiseAbs().maxCoeff() > 0;
  CHECK(moved);
}

TEST_CASE("zero episodes give an empty result") {
  TrainConfig cfg = tiny_config();
  cfg.episodes = 0;
  const auto res = train<double>({make_instance(2, 2, 0)}, cfg);
  CHECK(res.curve.empty());
  CHECK_FALSE(res.best[0].has_value());
  CHECK(res.env_steps == 0);
}

TEST_CASE("training smoke run finds verified solutions") {
  GscInstance inst = make_instance(2, 2, 4);
  const TrainConfig cfg = tiny_config();
  const auto res = train<double>({inst}, cfg);
  CHECK(res.episodes_run == cfg.episodes);
  CHECK(res.env_steps > 0);
  REQUIRE(res.best[0].has_value());

  // every stored best passes the verifier
  const auto& best = *res.best[0];
  const auto v = verify_gscd(inst, best.solution.gates,
                             static_cast<int>(best.solution.gates.size()));
  CHECK(v.yes);
  CHECK(best.metric.raw_count == 2 * static_cast<int>(best.solution.gates.size()));

  // curves clamp timeouts to 2 max_actions
  for (const auto& row : res.curve) {
    CHECK(row.raw_count <= 2 * cfg.max_actions);
    CHECK(row.epsilon <= cfg.epsilon0);
    CHECK(row.epsilon >= cfg.epsilon_min);
  }
}

TEST_CASE("stop condition and step budget") {
  GscInstance inst = make_instance(2, 2, 4);
  TrainConfig cfg = tiny_config();
  cfg.max_env_steps = 123;
  const auto res = train<double>({inst}, cfg);
  CHECK(res.env_steps <= 123);

  cfg.max_env_steps = 0;
  const auto res2 = train<double>({inst}, cfg, nullptr,
                                  [](const TrainResult& r) { return r.episodes_run >= 5; });
  CHECK(res2.episodes_run == 5);
}

TEST_CASE("greedy evaluation detects deterministic loops") {
  // an untrained tiny net on a hard instance loops quickly
  GscInstance inst = make_instance(2, 1, 0);
  inst.targets = {PauliString::parse("YY")};
  TrainConfig cfg = tiny_config();
  QFunction<double> qf(2, 1, cfg);
  for (auto& w : qf.policy.weights()) w.setZero();
  for (auto& b : qf.policy.biases()) b.setZero();
  const auto res = evaluate_greedy(qf, inst, 2000);
  CHECK(res.stuck);
  CHECK(res.steps <= 3);

  // a trivially resolved instance succeeds with the empty word
  GscInstance done = make_instance(2, 1, 0);
  done.targets = {PauliString::parse("ZI")};
  const auto ok = evaluate_greedy(qf, done, 10);
  CHECK(ok.resolved);
  CHECK(ok.solution.gates.empty());
}

TEST_CASE("checkpoint round trip") {
  TrainConfig cfg = tiny_config();
  QFunction<double> qf(2, 2, cfg);
  ReplayBuffer replay(8);
  for (int i = 0; i < 8; ++i) {
    Transition tr;
    tr.state.resize(16, 1);
    tr.next_state.resize(16, 0);
    tr.action = i % 6;
    tr.reward = 0.25f;
    tr.terminal = true;
    replay.push(std::move(tr));
  }
  std::vector<size_t> batch = {0, 1, 2, 3};
  for (int i = 0; i < 3; ++i) train_batch(qf, replay, batch, 0.75, 1e-2);

  const std::string path = "test_ddqn_checkpoint.bin";
  save_checkpoint(qf, cfg, 42, path);

  QFunction<double> other(2, 2, cfg);
  const int episode = load_checkpoint(other, cfg, path);
  CHECK(episode == 42);
  CHECK(other.opt.step_count() == qf.opt.step_count());

  Mlp<double>::Mat x = Mlp<double>::Mat::Random(16, 3);
  CHECK((other.policy.forward(x) - qf.policy.forward(x)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((other.target.forward(x) - qf.target.forward(x)).cwiseAbs().maxCoeff() == 0.0);

  TrainConfig changed = cfg;
  changed.gamma = 0.5;
  CHECK_THROWS_AS(load_checkpoint(other, changed, path), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("curve file format") {
  std::vector<EpisodeRow> curve = {{0, 80, 44, 0.9999, 0.125, 0},
                                   {1, 20, 12, 0.98, 0.5, 0}};
  const std::string path = "test_ddqn_curve.csv";
  write_curve(curve, path);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "episode;raw_count;cancelled_count;epsilon;loss");
  std::getline(in, line);
  CHECK(line == "0;80;44;0.999900;0.125");
  std::remove(path.c_str());
}
