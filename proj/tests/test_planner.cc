// Copyright 2026 The badgr-sim Authors
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

#include <cmath>

#include <gtest/gtest.h>

#include "badgr/common/rng.h"
#include "badgr/planner/planner.h"
#include "badgr/planner/reward.h"

namespace badgr::planner {
namespace {

model::EventPrediction constant_prediction(int h, double pc, double pb, Vec2 pos) {
  model::EventPrediction p;
  p.p_coll.assign(static_cast<size_t>(h), pc);
  p.p_bump.assign(static_cast<size_t>(h), pb);
  p.pos.assign(static_cast<size_t>(h), pos);
  return p;
}

TEST(Reward, CertainCollisionIsTheMinimum) {
  const RewardConfig cfg{1.0, 0.5, {}};
  EXPECT_DOUBLE_EQ(reward(constant_prediction(8, 1.0, 0.3, {1, 1}), cfg, {5, 0}), -8 * 2.5);
}

TEST(Reward, OnBearingWithoutEventsIsZero) {
  const RewardConfig cfg{1.0, 0.5, {}};
  model::EventPrediction p = constant_prediction(8, 0.0, 0.0, {});
  for (size_t h = 0; h < 8; ++h) p.pos[h] = {0.3 * static_cast<double>(h + 1), 0.6 * static_cast<double>(h + 1)};
  EXPECT_NEAR(reward(p, cfg, {1.0, 2.0}), 0.0, 1e-12);
}

TEST(Reward, AwayFromGoalCostsAlphaPos) {
  const RewardConfig cfg{0.7, 0.5, {}};
  EXPECT_NEAR(step_cost(0, 0, {-1, 0}, {3, 0}, cfg), 0.7, 1e-12);
  EXPECT_NEAR(step_cost(0, 0, {0, 0}, {3, 0}, cfg), 0.7, 1e-12);
  EXPECT_NEAR(step_cost(0, 0.4, {0, 1}, {0, 3}, cfg), 0.5 * 0.4, 1e-12);
}

TEST(Reward, RejectsNegativeWeights) {
  EXPECT_THROW((RewardConfig{-1.0, 0.5, {}}).validate(), std::invalid_argument);
}

PlannerConfig wide_config() {
  PlannerConfig c;
  c.bounds = {-100, 100, -100, 100};
  return c;
}

TEST(Sampling, NoNoiseFullCorrelationShiftsEstimate) {
  PlannerConfig cfg = wide_config();
  cfg.sigma_v = cfg.sigma_w = 0.0;
  cfg.beta = 1.0;
  cfg.num_samples = 5;
  PlannerState ps = make_planner_state(cfg);
  for (int h = 0; h < 8; ++h) ps.a_hat[static_cast<size_t>(h)] = {0.1 * h, -0.2 * h};
  Rng rng(1);
  for (const Sequence& s : sample_sequences(ps, cfg, rng)) {
    for (size_t h = 0; h < 8; ++h) EXPECT_EQ(s[h], ps.a_hat[std::min<size_t>(h + 1, 7)]);
  }
}

TEST(Sampling, ZeroBetaGivesZeroSequences) {
  PlannerConfig cfg = wide_config();
  cfg.beta = 0.0;
  cfg.num_samples = 10;
  PlannerState ps = make_planner_state(cfg);
  for (Action& a : ps.a_hat) a = {3, 4};
  Rng rng(2);
  for (const Sequence& s : sample_sequences(ps, cfg, rng))
    for (const Action& a : s) EXPECT_EQ(a, (Action{0, 0}));
}

TEST(Sampling, RecursionStatisticsMatchClosedForm) {
  PlannerConfig cfg = wide_config();
  cfg.sigma_v = cfg.sigma_w = 1.0;
  cfg.beta = 0.5;
  cfg.num_samples = 10000;
  const PlannerState ps = make_planner_state(cfg);
  Rng rng(3);
  const auto samples = sample_sequences(ps, cfg, rng);
  const double n = static_cast<double>(samples.size());
  for (size_t h = 0; h < 8; ++h) {
    // a~_h = sum_j beta (1 - beta)^(h - j) eps_j
    double var = 0;
    for (size_t j = 0; j <= h; ++j) var += std::pow(cfg.beta * std::pow(1 - cfg.beta, static_cast<double>(h - j)), 2);
    for (int dim = 0; dim < 2; ++dim) {
      double m = 0, m2 = 0;
      for (const Sequence& s : samples) {
        const double x = dim ? s[h].w : s[h].v;
        m += x;
        m2 += x * x;
      }
      m /= n;
      const double v = m2 / n - m * m;
      EXPECT_NEAR(m, 0.0, 3 * std::sqrt(var / n)) << "h " << h;
      EXPECT_NEAR(v, var, 3 * var * std::sqrt(2 / (n - 1))) << "h " << h;
    }
  }
}

TEST(Sampling, ClampsToBounds) {
  PlannerConfig cfg;
  cfg.sigma_v = cfg.sigma_w = 5.0;
  Rng rng(4);
  for (const Sequence& s : sample_sequences(make_planner_state(cfg), cfg, rng)) {
    for (const Action& a : s) {
      EXPECT_GE(a.v, cfg.bounds.v_min);
      EXPECT_LE(a.v, cfg.bounds.v_max);
      EXPECT_GE(a.w, cfg.bounds.w_min);
      EXPECT_LE(a.w, cfg.bounds.w_max);
    }
  }
  for (const Sequence& s : random_shooting(cfg, rng))
    for (const Action& a : s) EXPECT_LE(std::abs(a.w), cfg.bounds.w_max);
}

std::vector<Sequence> random_samples(int n, uint64_t seed) {
  Rng rng(seed);
  std::vector<Sequence> out;
  for (int i = 0; i < n; ++i) {
    Sequence s;
    for (int h = 0; h < 8; ++h) s.push_back({uniform(rng, 0, 2), uniform(rng, -1.5, 1.5)});
    out.push_back(s);
  }
  return out;
}

TEST(Update, EqualRewardsGiveTheMean) {
  const auto s = random_samples(7, 1);
  const std::vector<double> r(7, -3.0);
  const Sequence a = reward_weighted_update(s, r, 10.0);
  for (size_t h = 0; h < 8; ++h) {
    double mv = 0;
    for (const Sequence& q : s) mv += q[h].v / 7.0;
    EXPECT_NEAR(a[h].v, mv, 1e-12);
  }
}

TEST(Update, ShiftInvariant) {
  const auto s = random_samples(50, 2);
  Rng rng(5);
  std::vector<double> r, shifted;
  // Dyadic rewards so that adding c is exact in floating point.
  for (int i = 0; i < 50; ++i) r.push_back(std::round(uniform(rng, -20, 0) * 1024) / 1024);
  for (double c : {-1000.0, 3.5, 1e6}) {
    shifted.clear();
    for (double x : r) shifted.push_back(x + c);
    const Sequence a = reward_weighted_update(s, r, 10.0), b = reward_weighted_update(s, shifted, 10.0);
    for (size_t h = 0; h < 8; ++h) {
      EXPECT_NEAR(a[h].v, b[h].v, 1e-12);
      EXPECT_NEAR(a[h].w, b[h].w, 1e-12);
    }
  }
}

TEST(Update, TemperatureLimits) {
  const auto s = random_samples(2, 3);
  const std::vector<double> r{0.0, 10.0};
  const Sequence hot = reward_weighted_update(s, r, 100.0);
  const Sequence cold = reward_weighted_update(s, r, 1e-12);
  for (size_t h = 0; h < 8; ++h) {
    EXPECT_NEAR(hot[h].v, s[1][h].v, 1e-6);
    EXPECT_NEAR(hot[h].w, s[1][h].w, 1e-6);
    EXPECT_NEAR(cold[h].w, 0.5 * (s[0][h].w + s[1][h].w), 1e-9);
  }
}

TEST(Update, RejectsNonFiniteRewards) {
  const auto s = random_samples(2, 4);
  const std::vector<double> r{0.0, NAN};
  EXPECT_THROW(reward_weighted_update(s, r, 1.0), std::domain_error);
}

TEST(Config, Validation) {
  PlannerConfig c;
  c.num_samples = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = PlannerConfig{};
  c.beta = 1.5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = PlannerConfig{};
  c.gamma = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

// Unicycle rollout from the origin; collision probability grows with |w|.
class FakeModel : public PredictiveModel {
 public:
  int horizon() const override { return 8; }
  std::vector<model::EventPrediction> predict_batch(const sim::SensorFrame&,
                                                    const std::vector<Sequence>& seqs) override {
    std::vector<model::EventPrediction> out;
    for (const Sequence& s : seqs) {
      model::EventPrediction p;
      double x = 0, y = 0, th = 0;
      for (const Action& a : s) {
        x += a.v * std::cos(th) * 0.25;
        y += a.v * std::sin(th) * 0.25;
        th += a.w * 0.25;
        p.p_coll.push_back(std::min(1.0, 0.1 * std::abs(a.w)));
        p.p_bump.push_back(0.0);
        p.pos.push_back({x, y});
      }
      out.push_back(p);
    }
    return out;
  }
};

TEST(PlanStep, DeterministicGivenSeed) {
  FakeModel m;
  const PlannerConfig cfg;
  const RewardConfig rcfg{1.0, 0.0, {5, 5}};
  sim::SensorFrame f;
  f.odom = {1, 1, 0.2};
  PlannerState a = make_planner_state(cfg), b = make_planner_state(cfg);
  Rng ra(9), rb(9);
  const PlanResult x = plan_step(f, a, m, rcfg, cfg, ra);
  const PlanResult y = plan_step(f, b, m, rcfg, cfg, rb);
  EXPECT_EQ(x.action, y.action);
  EXPECT_EQ(a.a_hat, b.a_hat);
}

TEST(PlanStep, WarmStartsFromTheUpdatedEstimate) {
  FakeModel m;
  PlannerConfig cfg;
  cfg.bounds = {0.0, 2.0, -1.5, 1.5};
  const RewardConfig rcfg{1.0, 0.0, {5, 5}};
  sim::SensorFrame f;
  PlannerState ps = make_planner_state(cfg);
  Rng rng(10);
  const PlanResult r = plan_step(f, ps, m, rcfg, cfg, rng);
  EXPECT_EQ(ps.a_hat, reward_weighted_update(r.diag.samples, r.diag.rewards, cfg.gamma));
  EXPECT_EQ(r.action, ps.a_hat[0]);
  EXPECT_EQ(r.diag.samples.size(), 256u);

  PlannerConfig probe = cfg;
  probe.sigma_v = probe.sigma_w = 0.0;
  probe.beta = 1.0;
  const Sequence before = ps.a_hat;
  const PlanResult next = plan_step(f, ps, m, rcfg, probe, rng);
  for (const Sequence& s : next.diag.samples)
    for (size_t h = 0; h < 8; ++h) EXPECT_EQ(s[h], before[std::min<size_t>(h + 1, 7)]);
}

TEST(PlanStep, TurnsTowardTheGoal) {
  FakeModel m;
  const PlannerConfig cfg;
  const RewardConfig rcfg{1.0, 0.0, {0, 5}};  // goal to the left
  sim::SensorFrame f;
  PlannerState ps = make_planner_state(cfg);
  Rng rng(11);
  Action a;
  for (int i = 0; i < 5; ++i) a = plan_step(f, ps, m, rcfg, cfg, rng).action;
  EXPECT_GT(a.w, 0.2);
}

}  // namespace
}  // namespace badgr::planner
