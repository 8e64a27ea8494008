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

#include "badgr/baselines/lidar_policy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace badgr::baselines {

LidarInput lidar_input(const sim::SensorFrame& frame, double max_range) {
  return {frame.range_scan, frame.odom, max_range};
}

void GeometricPlannerConfig::validate() const {
  if (!(clearance > 0)) throw std::invalid_argument("GeometricPlannerConfig: clearance must be > 0");
  if (!(dt > 0)) throw std::invalid_argument("GeometricPlannerConfig: dt must be > 0");
  sampling.validate();
}

LidarPolicyState make_lidar_state(const GeometricPlannerConfig& cfg) {
  return {planner::make_planner_state(cfg.sampling), 0};
}

std::vector<Vec2> scan_points(const LidarInput& in) {
  std::vector<Vec2> pts;
  const size_t n = in.range_scan.size();
  for (size_t i = 0; i < n; ++i) {
    const double r = in.range_scan[i];
    if (r >= in.max_range) continue;
    const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return pts;
}

model::EventPrediction rollout(const planner::Sequence& seq, std::span<const Vec2> points,
                               const GeometricPlannerConfig& cfg) {
  model::EventPrediction p;
  const size_t hz = seq.size();
  p.p_coll.assign(hz, 0.0);
  p.p_bump.assign(hz, 0.0);
  p.pos.resize(hz);
  const double c2 = cfg.clearance * cfg.clearance;
  double x = 0, y = 0, th = 0;
  bool hit = false;
  for (size_t h = 0; h < hz; ++h) {
    x += seq[h].v * std::cos(th) * cfg.dt;
    y += seq[h].v * std::sin(th) * cfg.dt;
    th += seq[h].w * cfg.dt;
    p.pos[h] = {x, y};
    for (size_t k = 0; !hit && k < points.size(); ++k) {
      const double dx = points[k].x - x, dy = points[k].y - y;
      hit = dx * dx + dy * dy < c2;
    }
    p.p_coll[h] = hit ? 1.0 : 0.0;
  }
  return p;
}

Action lidar_policy_step(const LidarInput& in, Vec2 goal, LidarPolicyState& state,
                         const GeometricPlannerConfig& cfg, Rng& rng, LidarStepInfo* info) {
  cfg.validate();
  planner::PlannerState& ps = state.ps;
  ps.pose = in.odom;
  const Vec2 local_goal = to_local(ps.pose, goal.x, goal.y);
  const std::vector<Vec2> pts = scan_points(in);

  const std::vector<planner::Sequence> samples = planner::sample_sequences(ps, cfg.sampling, rng);
  std::vector<model::EventPrediction> preds;
  preds.reserve(samples.size());
  size_t colliding = 0;
  for (const auto& s : samples) {
    preds.push_back(rollout(s, pts, cfg));
    colliding += preds.back().p_coll.back() > 0 ? 1 : 0;
  }
  if (info) info->colliding_samples = colliding;

  if (colliding == samples.size()) {
    if (state.rotate_dir == 0) state.rotate_dir = local_goal.y >= 0 ? 1 : -1;
    if (info) info->rotating = true;
    return {0.0, state.rotate_dir * cfg.sampling.bounds.w_max};
  }
  state.rotate_dir = 0;
  planner::RewardConfig rcfg{1.0, 0.0, goal};
  const std::vector<double> rewards = planner::score(preds, rcfg, local_goal);
  ps.a_hat = planner::reward_weighted_update(samples, rewards, cfg.sampling.gamma);
  for (Action& a : ps.a_hat) a = cfg.sampling.bounds.clamp(a);
  if (info) info->rotating = false;
  return ps.a_hat.front();
}

}  // namespace badgr::baselines
