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

#ifndef BADGR_HARNESS_MPC_RUN_H_
#define BADGR_HARNESS_MPC_RUN_H_

#include <string>
#include <vector>

#include "badgr/harness/policies.h"
#include "badgr/sim/terrain.h"

namespace badgr::harness {

enum class Outcome { kReachedGoal, kCollided, kTrapped, kTimeout };

std::string outcome_name(Outcome o);
Outcome outcome_from_name(const std::string& s);

struct RunConfig {
  sim::SimConfig sim;
  int max_steps = 300;
  int trap_steps = 40;
  double trap_distance = 0.5;  // m of net displacement over trap_steps
  bool record_info = true;     // include policy diagnostics per step
};

struct TrajectoryStep {
  int step = 0;
  Pose2 pose;  // true pose after the step
  Pose2 odom;
  Action action;
  bool gt_collision = false;
  double gt_bumpiness = 0.0;
  std::string terrain;  // visual class under the robot after the step
  nlohmann::json info;
};

// Everything the metrics are computed from; round-trips through NDJSON.
struct RunRecord {
  std::string policy;
  std::string map;
  int start_index = 0;
  int trial = 0;
  uint64_t seed = 0;
  Pose2 start;
  Outcome outcome = Outcome::kTimeout;
  std::vector<TrajectoryStep> steps;
};

struct RunMetrics {
  Outcome outcome = Outcome::kTimeout;
  int steps = 0;
  double mean_bumpiness = 0.0;  // mean injected angular noise per step, rad/s
  double distance = 0.0;        // path length driven, m
  size_t cells_visited = 0;
  bool entered_tall_grass = false;
};

RunMetrics compute_metrics(const RunRecord& run, const sim::TerrainMap& map);

// Alternates policy.act and sim::step until the goal region is entered, the
// simulator reports a collision, net progress stalls for trap_steps, or
// max_steps elapse. Simulator and policy draw from separate seeded streams.
RunRecord run_episode(const sim::TerrainMap& map, const Pose2& start, Policy& policy,
                      const RunConfig& cfg, uint64_t seed);

// run_episode with the MPC planner over the given predictive model.
RunRecord mpc_run(const sim::TerrainMap& map, const Pose2& start, planner::PredictiveModel& model,
                  const planner::RewardConfig& rcfg, const planner::PlannerConfig& pcfg,
                  const RunConfig& cfg, uint64_t seed, OracleModel* oracle = nullptr);

// One JSON object per line: a header line followed by one line per step.
void write_run_ndjson(std::ostream& out, const RunRecord& run);
std::vector<RunRecord> read_runs_ndjson(std::istream& in);

}  // namespace badgr::harness

#endif  // BADGR_HARNESS_MPC_RUN_H_
