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

#ifndef BADGR_HARNESS_REPORT_H_
#define BADGR_HARNESS_REPORT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "badgr/harness/experiments.h"
#include "badgr/planner/planner.h"

namespace badgr::harness {

// Top-down map with one polyline per run, colored by policy.
std::string trajectory_svg(const sim::TerrainMap& map, const std::vector<RunRecord>& runs,
                           const std::vector<std::string>& policy_order);

// Candidate rollouts of one planning step drawn from `pose`, shaded by
// predicted collision probability; the chosen estimate is drawn on top.
std::string candidate_fan_svg(const sim::TerrainMap& map, const Pose2& pose,
                              const planner::PlanDiagnostics& diag);

struct CandidateFan {
  planner::PlanDiagnostics diag;
  std::string svg;
  int likely_collisions = 0;  // candidates with some step p_coll > 0.5
};

// One planning step of `model` from `pose` (fresh planner state).
CandidateFan candidate_fan(const sim::TerrainMap& map, const Pose2& pose, planner::PredictiveModel& model,
                           const planner::RewardConfig& rcfg, const planner::PlannerConfig& pcfg,
                           const sim::SimConfig& sim_cfg, uint64_t seed);

// Fixed-width summary table.
std::string format_table(const SuiteResult& s);

// Rebuilds tables and figures for every eval directory under `root`
// (root/eval/<suite>/runs.ndjson), plus a wall-probe candidate fan when an
// urban model exists. Returns the combined table text.
std::string write_report(const std::filesystem::path& root, const ExperimentConfig& cfg);

}  // namespace badgr::harness

#endif  // BADGR_HARNESS_REPORT_H_
