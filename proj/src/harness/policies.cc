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

#include "badgr/harness/policies.h"

namespace badgr::harness {

BadgrPolicy::BadgrPolicy(std::string name, planner::PredictiveModel& model, planner::RewardConfig rcfg,
                         planner::PlannerConfig pcfg, OracleModel* oracle)
    : name_(std::move(name)), model_(model), rcfg_(rcfg), pcfg_(pcfg), oracle_(oracle) {
  reset();
}

void BadgrPolicy::reset() {
  ps_ = planner::make_planner_state(pcfg_);
  last_ = {};
}

Action BadgrPolicy::act(const sim::SensorFrame& frame, const sim::RobotState& truth, Rng& rng) {
  if (oracle_) oracle_->set_state(truth);
  last_ = planner::plan_step(frame, ps_, model_, rcfg_, pcfg_, rng);
  if (!keep_) {
    last_.diag.samples.clear();
    last_.diag.predictions.clear();
  }
  return last_.action;
}

nlohmann::json BadgrPolicy::last_info() const {
  const auto& c = last_.diag.chosen;
  nlohmann::json pos = nlohmann::json::array();
  for (const Vec2& p : c.pos) pos.push_back({p.x, p.y});
  double best = last_.diag.rewards.empty() ? 0.0 : last_.diag.rewards[last_.diag.best_sample];
  return {{"pred_coll", c.p_coll}, {"pred_bump", c.p_bump}, {"pred_pos", pos}, {"best_reward", best}};
}

LidarPolicy::LidarPolicy(Vec2 goal, baselines::GeometricPlannerConfig cfg, double max_range)
    : goal_(goal), cfg_(cfg), max_range_(max_range) {
  reset();
}

void LidarPolicy::reset() {
  state_ = baselines::make_lidar_state(cfg_);
  info_ = {};
}

Action LidarPolicy::act(const sim::SensorFrame& frame, const sim::RobotState&, Rng& rng) {
  return baselines::lidar_policy_step(baselines::lidar_input(frame, max_range_), goal_, state_, cfg_,
                                      rng, &info_);
}

nlohmann::json LidarPolicy::last_info() const {
  return {{"rotating", info_.rotating}, {"colliding_samples", info_.colliding_samples}};
}

Action NaivePolicy::act(const sim::SensorFrame& frame, const sim::RobotState&, Rng&) {
  return baselines::naive_policy_step(frame.odom, goal_, cfg_);
}

namespace {

class LearnedPolicy : public Policy {
 public:
  LearnedPolicy(const std::string& name, std::shared_ptr<const model::Model> m,
                const planner::RewardConfig& rcfg, const planner::PlannerConfig& pcfg)
      : model_(std::move(m)), learned_(*model_), inner_(name, learned_, rcfg, pcfg) {}
  std::string name() const override { return inner_.name(); }
  void reset() override { inner_.reset(); }
  Action act(const sim::SensorFrame& frame, const sim::RobotState& truth, Rng& rng) override {
    return inner_.act(frame, truth, rng);
  }
  nlohmann::json last_info() const override { return inner_.last_info(); }

 private:
  std::shared_ptr<const model::Model> model_;
  planner::LearnedModel learned_;
  BadgrPolicy inner_;
};

class OraclePolicy : public Policy {
 public:
  OraclePolicy(const std::string& name, const sim::TerrainMap& map, const sim::SimConfig& sim_cfg,
               double thr, const planner::RewardConfig& rcfg, const planner::PlannerConfig& pcfg)
      : oracle_(map, sim_cfg, pcfg.horizon, thr), inner_(name, oracle_, rcfg, pcfg, &oracle_) {}
  std::string name() const override { return inner_.name(); }
  void reset() override { inner_.reset(); }
  Action act(const sim::SensorFrame& frame, const sim::RobotState& truth, Rng& rng) override {
    return inner_.act(frame, truth, rng);
  }
  nlohmann::json last_info() const override { return inner_.last_info(); }

 private:
  OracleModel oracle_;
  BadgrPolicy inner_;
};

}  // namespace

std::unique_ptr<Policy> make_learned_policy(const std::string& name,
                                            std::shared_ptr<const model::Model> model,
                                            const planner::RewardConfig& rcfg,
                                            const planner::PlannerConfig& pcfg) {
  return std::make_unique<LearnedPolicy>(name, std::move(model), rcfg, pcfg);
}

std::unique_ptr<Policy> make_oracle_policy(const std::string& name, const sim::TerrainMap& map,
                                           const sim::SimConfig& sim_cfg, double bump_threshold,
                                           const planner::RewardConfig& rcfg,
                                           const planner::PlannerConfig& pcfg) {
  return std::make_unique<OraclePolicy>(name, map, sim_cfg, bump_threshold, rcfg, pcfg);
}

}  // namespace badgr::harness
