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

#ifndef BADGR_SIM_SIMWORLD_H_
#define BADGR_SIM_SIMWORLD_H_

#include <vector>

#include "badgr/common/geometry.h"
#include "badgr/common/rng.h"
#include "badgr/sim/terrain.h"

namespace badgr::sim {

struct SimConfig {
  double dt = 0.25;  // s, the 4 Hz control rate
  double v_max = 2.0;
  double w_max = 1.5;

  double cam_fov_deg = 170.0;
  int cam_rays = 32;
  std::vector<double> ground_lookaheads = {0.5, 1.0, 2.0, 4.0};
  int range_rays = 72;
  double max_range = 10.0;
  double min_range = 0.05;
  double range_noise_sigma = 0.0;

  double bump_gain = 1.0;
  double odom_sigma_pos = 0.01;       // m per step
  double odom_sigma_heading = 0.002;  // rad per step

  // Runtime firewall probe: when set, the gt_* outputs of step() are
  // replaced with garbage. Learner-side outputs must not change.
  bool poison_ground_truth = false;

  int ground_samples() const { return static_cast<int>(ground_lookaheads.size()); }
};

struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // (-pi, pi]
  double commanded_v = 0.0;
  double commanded_w = 0.0;
  double measured_v = 0.0;
  double measured_w = 0.0;
  double odom_x = 0.0;
  double odom_y = 0.0;
  double odom_heading = 0.0;
  // Most recent inertial readings, produced by step().
  double imu_w_mag = 0.0;
  double imu_a_mag = 0.0;

  Pose2 pose() const { return {x, y, heading}; }
  Pose2 odom_pose() const { return {odom_x, odom_y, odom_heading}; }
  friend bool operator==(const RobotState&, const RobotState&) = default;
};

// Robot at rest at `pose`, with odometry initialised to the true pose.
RobotState make_state(const Pose2& pose);

// What the robot observes at one control tick.
struct SensorFrame {
  // Camera analog: W rays over the field of view, leftmost first.
  std::vector<VisualClass> cam_obstacle_class;  // FreeGround when no hit
  std::vector<double> cam_obstacle_dist;        // normalised, 1 = no hit
  std::vector<VisualClass> cam_ground_class;    // W x D, ray-major
  // Range analog: R rays over 360 degrees, ray 0 straight ahead, CCW.
  std::vector<double> range_scan;  // meters, (0, max_range]
  double imu_w_mag = 0.0;
  double imu_a_mag = 0.0;
  Pose2 odom;
  double cmd_v = 0.0;  // command that produced this reading
  double cmd_w = 0.0;
  double odom_v = 0.0;  // measured by the wheel encoders
  double odom_w = 0.0;

  friend bool operator==(const SensorFrame&, const SensorFrame&) = default;
};

struct StepOutcome {
  RobotState next_state;
  SensorFrame frame;
  // Evaluation-only ground truth. Only the harness may read these.
  bool gt_collision = false;
  double gt_bumpiness_sample = 0.0;
};

// Advances the unicycle one control tick. Actions are clamped to the
// configured bounds. Motion into a physically untraversable cell is blocked:
// position stays put, measured_v is zero and gt_collision is set.
StepOutcome step(const RobotState& state, Action action, const TerrainMap& map,
                 const SimConfig& cfg, Rng& rng);

// Noise-free kinematic prediction used by rollouts: returns the pose after
// one tick and whether the motion was blocked. No sensors, no randomness.
struct KinematicResult {
  Pose2 pose;
  bool blocked = false;
};
KinematicResult kinematic_step(const Pose2& pose, Action action,
                               const TerrainMap& map, const SimConfig& cfg);

Action clamp_action(Action a, const SimConfig& cfg);

struct RayHit {
  bool hit = false;
  double distance = 0.0;
  VisualClass visual_class = VisualClass::kFreeGround;
};

// Exact grid traversal to the first geometrically occupied cell.
RayHit cast_ray(const TerrainMap& map, double x, double y, double angle,
                double max_range);

std::vector<double> camera_ray_angles(const SimConfig& cfg);  // relative
std::vector<double> range_ray_angles(const SimConfig& cfg);   // relative

SensorFrame render_sensors(const RobotState& state, const TerrainMap& map,
                           const SimConfig& cfg, Rng& rng);

}  // namespace badgr::sim

#endif  // BADGR_SIM_SIMWORLD_H_
