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

#ifndef BADGR_HARNESS_EXPERIMENTS_H_
#define BADGR_HARNESS_EXPERIMENTS_H_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "badgr/harness/pipeline.h"

namespace badgr::harness {

struct PolicySummary {
  int runs = 0;
  int reached = 0;
  int collided = 0;
  int trapped = 0;
  int timeout = 0;
  double success_rate = 0.0;
  double mean_bumpiness = 0.0;
  double sd_bumpiness = 0.0;
  double mean_steps_success = 0.0;  // NaN without successes
  double mean_distance_failure = 0.0;  // NaN without failures
  int entered_tall_grass = 0;
  // Trapped, or reached the goal without ever entering TallGrass.
  int trapped_or_detour = 0;
};

struct SuiteResult {
  std::string suite;
  std::string map_name;
  std::vector<RunRecord> runs;
  std::map<std::string, PolicySummary> summary;
  std::vector<std::string> policy_order;
};

// Pure function of the run records.
std::map<std::string, PolicySummary> summarize(const std::vector<RunRecord>& runs,
                                               const sim::TerrainMap& map);

// Paired one-sided sign test of H1: a < b. Ties are dropped.
struct SignTest {
  int wins = 0;    // pairs with a < b
  int losses = 0;  // pairs with a > b
  int ties = 0;
  double p_value = 1.0;
};
SignTest sign_test(const std::vector<double>& a, const std::vector<double>& b);

// Per-run value of `policy` in (start, trial) order.
std::vector<double> paired_bumpiness(const SuiteResult& s, const std::string& policy);
std::vector<int> paired_success(const SuiteResult& s, const std::string& policy);
// Mutual-success steps-to-goal ratio mean(b) / mean(a); NaN if none.
double steps_ratio(const SuiteResult& s, const std::string& a, const std::string& b);

// Factory so every (start, trial) run gets a freshly built policy.
using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

// starts x trials runs per policy on one map; the seed for (start, trial) is
// shared by all policies so runs are paired. Writes runs.ndjson and
// table.csv under out_dir when it is non-empty.
SuiteResult run_eval(const ExperimentConfig& cfg, const std::string& suite, const sim::TerrainMap& map,
                     const std::string& map_name,
                     const std::vector<std::pair<std::string, PolicyFactory>>& policies,
                     int starts, int trials, const std::filesystem::path& out_dir);

void write_table_csv(const std::filesystem::path& path, const SuiteResult& s);

// Suites. Each trains (or reuses) what it needs through the pipeline.
struct UrbanSuite {
  SuiteResult eval;
  StageResult model;
  SignTest bump_vs_nobump;
  SignTest bump_vs_lidar;
};
UrbanSuite urban_suite(Pipeline& p);

struct SelfImprovement {
  SuiteResult eval;  // policies zero_shot, target_only, finetuned
  StageResult zero_shot, target_only, finetuned;
  uint64_t target_only_records = 0;
  uint64_t finetuned_records = 0;
};
SelfImprovement self_improvement(Pipeline& p);

// BADGR (finetuned model) vs the geometric baseline on TallGrassCorridor.
SuiteResult tallgrass_suite(Pipeline& p, const StageResult& model);

// BADGR (finetuned model) on each held-out NovelRandom map.
SuiteResult generalization_suite(Pipeline& p, const StageResult& model);

// The simulator oracle as the planner's model on Urban maps.
SuiteResult oracle_suite(const ExperimentConfig& cfg, int maps, int starts,
                         const std::filesystem::path& out_dir);

// Best-found reward of one correlated-noise batch (warm-started by a short
// oracle MPC run) against uniform random shooting with the same number of
// samples, on `scenes` oracle scenes.
struct OptimizerComparison {
  int scenes = 0;
  int optimizer_at_least_as_good = 0;
  std::vector<double> optimizer_best, random_best;
};
OptimizerComparison compare_optimizers(const ExperimentConfig& cfg, int scenes);

// A pose facing a wall from `distance` meters, for candidate-fan probes.
std::optional<Pose2> wall_probe_pose(const sim::TerrainMap& map, double distance);

}  // namespace badgr::harness

#endif  // BADGR_HARNESS_EXPERIMENTS_H_
