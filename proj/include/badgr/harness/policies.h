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

#ifndef BADGR_HARNESS_POLICIES_H_
#define BADGR_HARNESS_POLICIES_H_

#include <memory>
#include <optional>
#include <string>

#include "badgr/baselines/lidar_policy.h"
#include "badgr/baselines/naive_policy.h"
#include "badgr/harness/oracle_model.h"
#include "badgr/planner/planner.h"
#include "json.hpp"

namespace badgr::harness {

class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual void reset() = 0;
  // `truth` is the evaluation-side robot state. Only the oracle-backed
  // planner reads it; every other policy sees the sensor frame alone.
  virtual Action act(const sim::SensorFrame& frame, const sim::RobotState& truth, Rng& rng) = 0;
  // Per-step record fields for the trajectory file.
  virtual nlohmann::json last_info() const { return nlohmann::json::object(); }
};

// MPC with a predictive model: learned checkpoint or the simulator oracle.
class BadgrPolicy : public Policy {
 public:
  BadgrPolicy(std::string name, planner::PredictiveModel& model, planner::RewardConfig rcfg,
              planner::PlannerConfig pcfg, OracleModel* oracle = nullptr);
  std::string name() const override { return name_; }
  void reset() override;
  Action act(const sim::SensorFrame& frame, const sim::RobotState& truth, Rng& rng) override;
  nlohmann::json last_info() const override;
  // Set to keep every sample and prediction of the latest step.
  void keep_diagnostics(bool keep) { keep_ = keep; }
  const planner::PlanResult& last() const { return last_; }

 private:
  std::string name_;
  planner::PredictiveModel& model_;
  planner::RewardConfig rcfg_;
  planner::PlannerConfig pcfg_;
  OracleModel* oracle_;
  planner::PlannerState ps_;
  planner::PlanResult last_;
  bool keep_ = false;
};

class LidarPolicy : public Policy {
 public:
  LidarPolicy(Vec2 goal, baselines::GeometricPlannerConfig cfg, double max_range);
  std::string name() const override { return "lidar"; }
  void reset() override;
  Action act(const sim::SensorFrame& frame, const sim::RobotState& truth, Rng& rng) override;
  nlohmann::json last_info() const override;

 private:
  Vec2 goal_;
  baselines::GeometricPlannerConfig cfg_;
  double max_range_;
  baselines::LidarPolicyState state_;
  baselines::LidarStepInfo info_;
};

class NaivePolicy : public Policy {
 public:
  NaivePolicy(Vec2 goal, baselines::NaivePolicyConfig cfg) : goal_(goal), cfg_(cfg) {}
  std::string name() const override { return "naive"; }
  void reset() override {}
  Action act(const sim::SensorFrame& frame, const sim::RobotState& truth, Rng& rng) override;

 private:
  Vec2 goal_;
  baselines::NaivePolicyConfig cfg_;
};

// Owning wrappers: the returned policy keeps its model alive.
std::unique_ptr<Policy> make_learned_policy(const std::string& name,
                                            std::shared_ptr<const model::Model> model,
                                            const planner::RewardConfig& rcfg,
                                            const planner::PlannerConfig& pcfg);
std::unique_ptr<Policy> make_oracle_policy(const std::string& name, const sim::TerrainMap& map,
                                           const sim::SimConfig& sim_cfg, double bump_threshold,
                                           const planner::RewardConfig& rcfg,
                                           const planner::PlannerConfig& pcfg);

}  // namespace badgr::harness

#endif  // BADGR_HARNESS_POLICIES_H_
