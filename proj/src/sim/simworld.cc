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

#include "badgr/sim/simworld.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace badgr::sim {
namespace {

// True if the straight segment a->b crosses any untraversable cell. Sampled
// at a quarter cell so diagonal corners cannot be cut.
bool segment_blocked(const TerrainMap& map, double ax, double ay, double bx,
                     double by) {
  const double len = std::hypot(bx - ax, by - ay);
  const int n = std::max(1, static_cast<int>(std::ceil(len / (0.25 * map.cell_size()))));
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    if (!map.cell_at(ax + t * (bx - ax), ay + t * (by - ay)).physically_traversable) {
      return true;
    }
  }
  return false;
}

}  // namespace

RobotState make_state(const Pose2& pose) {
  RobotState s;
  s.x = pose.x;
  s.y = pose.y;
  s.heading = wrap_angle(pose.heading);
  s.odom_x = s.x;
  s.odom_y = s.y;
  s.odom_heading = s.heading;
  return s;
}

Action clamp_action(Action a, const SimConfig& cfg) {
  return {std::clamp(a.v, -cfg.v_max, cfg.v_max),
          std::clamp(a.w, -cfg.w_max, cfg.w_max)};
}

KinematicResult kinematic_step(const Pose2& pose, Action action,
                               const TerrainMap& map, const SimConfig& cfg) {
  const Action a = clamp_action(action, cfg);
  const double nx = pose.x + a.v * std::cos(pose.heading) * cfg.dt;
  const double ny = pose.y + a.v * std::sin(pose.heading) * cfg.dt;
  const double nh = wrap_angle(pose.heading + a.w * cfg.dt);
  if (a.v != 0.0 && segment_blocked(map, pose.x, pose.y, nx, ny)) {
    return {{pose.x, pose.y, nh}, true};
  }
  return {{nx, ny, nh}, false};
}

StepOutcome step(const RobotState& state, Action action, const TerrainMap& map,
                 const SimConfig& cfg, Rng& rng) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
  const Action a = clamp_action(action, cfg);
  const KinematicResult k = kinematic_step(state.pose(), a, map, cfg);

  RobotState next = state;
  next.x = k.pose.x;
  next.y = k.pose.y;
  next.heading = k.pose.heading;
  next.commanded_v = a.v;
  next.commanded_w = a.w;
  next.measured_v = k.blocked ? 0.0 : a.v;
  next.measured_w = a.w;

  // Fixed draw order keeps trajectories reproducible across branches.
  const double z_bump = std::abs(normal(rng));
  const double n_x = normal(rng, cfg.odom_sigma_pos);
  const double n_y = normal(rng, cfg.odom_sigma_pos);
  const double n_h = normal(rng, cfg.odom_sigma_heading);

  const double bump_scale = cfg.bump_gain *
                            map.cell_at(state.x, state.y).bumpiness_coeff *
                            std::abs(next.measured_v);
  const double eta = z_bump * bump_scale;
  next.imu_w_mag = std::abs(a.w) + eta;
  next.imu_a_mag = std::abs(next.measured_v - state.measured_v) / cfg.dt;

  next.odom_x = state.odom_x + next.measured_v * std::cos(state.odom_heading) * cfg.dt + n_x;
  next.odom_y = state.odom_y + next.measured_v * std::sin(state.odom_heading) * cfg.dt + n_y;
  next.odom_heading = wrap_angle(state.odom_heading + next.measured_w * cfg.dt + n_h);

  StepOutcome out;
  out.next_state = next;
  out.frame = render_sensors(next, map, cfg, rng);
  out.gt_collision = k.blocked;
  out.gt_bumpiness_sample = eta;
  if (cfg.poison_ground_truth) {
    out.gt_collision = !k.blocked;
    out.gt_bumpiness_sample = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace badgr::sim
