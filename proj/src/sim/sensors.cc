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

#include <algorithm>
#include <cmath>
#include <limits>

#include "badgr/sim/simworld.h"

namespace badgr::sim {

RayHit cast_ray(const TerrainMap& map, double x, double y, double angle,
                double max_range) {
  const double cs = map.cell_size();
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  CellIndex c = map.index_of(x, y);
  {
    const TerrainCell& start = map.cell(c.cx, c.cy);
    if (start.geometric_occupancy) return {true, 0.0, start.visual_class};
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int step_x = dx > 0 ? 1 : -1;
  const int step_y = dy > 0 ? 1 : -1;
  double t_max_x = kInf, t_max_y = kInf, t_delta_x = kInf, t_delta_y = kInf;
  if (dx != 0.0) {
    t_max_x = dx > 0 ? ((c.cx + 1) * cs - x) / dx : (x - c.cx * cs) / -dx;
    t_delta_x = cs / std::abs(dx);
  }
  if (dy != 0.0) {
    t_max_y = dy > 0 ? ((c.cy + 1) * cs - y) / dy : (y - c.cy * cs) / -dy;
    t_delta_y = cs / std::abs(dy);
  }
  while (true) {
    double t;
    if (t_max_x < t_max_y) {
      t = t_max_x;
      c.cx += step_x;
      t_max_x += t_delta_x;
    } else {
      t = t_max_y;
      c.cy += step_y;
      t_max_y += t_delta_y;
    }
    if (t > max_range) return {};
    const TerrainCell& cell = map.cell(c.cx, c.cy);
    if (cell.geometric_occupancy) return {true, t, cell.visual_class};
  }
}

std::vector<double> camera_ray_angles(const SimConfig& cfg) {
  std::vector<double> out(static_cast<size_t>(cfg.cam_rays));
  const double fov = cfg.cam_fov_deg * kPi / 180.0;
  for (int i = 0; i < cfg.cam_rays; ++i) {
    out[i] = cfg.cam_rays == 1 ? 0.0 : 0.5 * fov - fov * i / (cfg.cam_rays - 1);
  }
  return out;
}

std::vector<double> range_ray_angles(const SimConfig& cfg) {
  std::vector<double> out(static_cast<size_t>(cfg.range_rays));
  for (int i = 0; i < cfg.range_rays; ++i) out[i] = 2.0 * kPi * i / cfg.range_rays;
  return out;
}

SensorFrame render_sensors(const RobotState& state, const TerrainMap& map,
                           const SimConfig& cfg, Rng& rng) {
  SensorFrame f;
  const int w = cfg.cam_rays;
  const int d = cfg.ground_samples();
  f.cam_obstacle_class.assign(w, VisualClass::kFreeGround);
  f.cam_obstacle_dist.assign(w, 1.0);
  f.cam_ground_class.assign(static_cast<size_t>(w) * d, VisualClass::kFreeGround);

  const std::vector<double> cam = camera_ray_angles(cfg);
  for (int i = 0; i < w; ++i) {
    const double a = state.heading + cam[i];
    const RayHit hit = cast_ray(map, state.x, state.y, a, cfg.max_range);
    double hit_dist = cfg.max_range;
    if (hit.hit) {
      hit_dist = std::max(hit.distance, cfg.min_range);
      f.cam_obstacle_class[i] = hit.visual_class;
      f.cam_obstacle_dist[i] = hit_dist / cfg.max_range;
    }
    for (int j = 0; j < d; ++j) {
      const double la = cfg.ground_lookaheads[j];
      VisualClass g;
      if (hit.hit && la >= hit_dist) {
        g = hit.visual_class;  // occluded by the first obstacle
      } else {
        g = map.cell_at(state.x + la * std::cos(a), state.y + la * std::sin(a)).visual_class;
      }
      f.cam_ground_class[static_cast<size_t>(i) * d + j] = g;
    }
  }

  const std::vector<double> rng_angles = range_ray_angles(cfg);
  f.range_scan.assign(rng_angles.size(), cfg.max_range);
  for (size_t i = 0; i < rng_angles.size(); ++i) {
    const RayHit hit = cast_ray(map, state.x, state.y, state.heading + rng_angles[i], cfg.max_range);
    if (!hit.hit) continue;
    double r = std::max(hit.distance, cfg.min_range);
    if (cfg.range_noise_sigma > 0.0) r += normal(rng, cfg.range_noise_sigma);
    f.range_scan[i] = std::clamp(r, cfg.min_range, cfg.max_range);
  }

  f.imu_w_mag = state.imu_w_mag;
  f.imu_a_mag = state.imu_a_mag;
  f.odom = state.odom_pose();
  f.cmd_v = state.commanded_v;
  f.cmd_w = state.commanded_w;
  f.odom_v = state.measured_v;
  f.odom_w = state.measured_w;
  return f;
}

}  // namespace badgr::sim
