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

#ifndef BADGR_BASELINES_LIDAR_POLICY_H_
#define BADGR_BASELINES_LIDAR_POLICY_H_

#include <span>
#include <vector>

#include "badgr/common/geometry.h"
#include "badgr/common/rng.h"
#include "badgr/planner/planner.h"

namespace badgr::baselines {

// Everything the geometric policy may look at. No camera, no parameters.
struct LidarInput {
  std::span<const double> range_scan;  // ray 0 ahead, CCW, evenly spaced
  Pose2 odom;
  double max_range = 10.0;
};

LidarInput lidar_input(const sim::SensorFrame& frame, double max_range);

struct GeometricPlannerConfig {
  double clearance = 0.4;  // m
  double dt = 0.25;        // rollout step, s
  planner::PlannerConfig sampling;

  void validate() const;
};

struct LidarPolicyState {
  planner::PlannerState ps;
  int rotate_dir = 0;  // nonzero while rotating in place
};

LidarPolicyState make_lidar_state(const GeometricPlannerConfig& cfg);

// Obstacle points of the scan in the robot frame. Rays at max range are
// treated as free.
std::vector<Vec2> scan_points(const LidarInput& in);

// Rolls a sequence out with noise-free unicycle kinematics from the origin.
// p_coll is 1 from the first pose within `clearance` of any point onward,
// p_bump is always 0.
model::EventPrediction rollout(const planner::Sequence& seq, std::span<const Vec2> points,
                               const GeometricPlannerConfig& cfg);

struct LidarStepInfo {
  bool rotating = false;
  size_t colliding_samples = 0;
};

Action lidar_policy_step(const LidarInput& in, Vec2 goal, LidarPolicyState& state,
                         const GeometricPlannerConfig& cfg, Rng& rng,
                         LidarStepInfo* info = nullptr);

}  // namespace badgr::baselines

#endif  // BADGR_BASELINES_LIDAR_POLICY_H_
