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

#ifndef BADGR_HARNESS_CONFIG_H_
#define BADGR_HARNESS_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "badgr/baselines/lidar_policy.h"
#include "badgr/baselines/naive_policy.h"
#include "badgr/collector/collector.h"
#include "badgr/harness/mpc_run.h"
#include "badgr/labeler/labeler.h"
#include "badgr/model/trainer.h"
#include "badgr/planner/planner.h"
#include "badgr/sim/map_gen.h"
#include "json.hpp"

namespace badgr::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Data gathered on one map family.
struct DomainConfig {
  sim::MapKind kind = sim::MapKind::kUrban;
  std::vector<uint64_t> map_seeds;
  uint64_t steps = 0;  // total over all maps
  collector::DetectorMode detector = collector::DetectorMode::kRangeBased;
};

struct EvalConfig {
  int starts = 5;
  int trials = 5;
  int max_steps = 300;
  int trap_steps = 40;
  double trap_distance = 0.5;
};

struct ExperimentConfig {
  uint64_t seed = 1;
  sim::SimConfig sim;
  collector::CollectConfig collect;  // .sim is overwritten by `sim`
  labeler::LabelConfig label;
  model::TrainConfig train;
  planner::PlannerConfig planner;
  double alpha_pos = 1.0;
  double alpha_bum_urban = 1.0;
  double alpha_bum_offroad = 0.0;
  double lidar_clearance = 0.4;
  baselines::NaivePolicyConfig naive;
  EvalConfig eval;

  DomainConfig urban;    // training data for the urban model
  DomainConfig offroad;  // target-domain data for self-improvement
  uint64_t urban_eval_map = 0;
  uint64_t offroad_eval_map = 0;
  uint64_t tallgrass_eval_map = 0;
  std::vector<uint64_t> novel_eval_maps;
  int novel_trials = 3;

  RunConfig run_config() const;
  baselines::GeometricPlannerConfig lidar_config() const;
  collector::CollectConfig collect_config() const;

  nlohmann::json to_json() const;
  // Missing keys keep their defaults; unknown keys are an error.
  static ExperimentConfig from_json(const nlohmann::json& j);
  void validate() const;
};

ExperimentConfig default_config();
ExperimentConfig load_config(const std::filesystem::path& path);
// Canonical JSON (sorted keys) hashed with FNV-1a.
uint64_t config_hash(const nlohmann::json& j);

// Output root: explicit flag, else $BADGR_OUT_ROOT, else "./badgr_out".
std::filesystem::path resolve_out_dir(const std::string& flag);

}  // namespace badgr::harness

#endif  // BADGR_HARNESS_CONFIG_H_
