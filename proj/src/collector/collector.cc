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

#include "badgr/collector/collector.h"

#include <algorithm>
#include <cmath>
#include <deque>

#include "badgr/sim/map_gen.h"

namespace badgr::collector {
namespace {

// Nearest cell center (ring search) that is traversable and has clearance.
std::optional<Vec2> nearest_free_pose(const sim::TerrainMap& map, double x, double y,
                                      double clearance) {
  const sim::CellIndex c0 = map.index_of(x, y);
  const int max_r = std::max(map.width(), map.height());
  for (int r = 0; r <= max_r; ++r) {
    std::optional<Vec2> best;
    double best_d = 0.0;
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
        const int cx = c0.cx + dx, cy = c0.cy + dy;
        if (!map.in_bounds(cx, cy) || !map.cell(cx, cy).physically_traversable) continue;
        const Vec2 p = map.cell_center(cx, cy);
        if (sim::clearance_at(map, p.x, p.y, clearance) < clearance) continue;
        const double d = std::hypot(p.x - x, p.y - y);
        if (!best || d < best_d) {
          best = p;
          best_d = d;
        }
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

double min_range(const sim::SensorFrame& f) {
  return f.range_scan.empty() ? 0.0 : *std::min_element(f.range_scan.begin(), f.range_scan.end());
}

}  // namespace

std::string_view detector_name(DetectorMode mode) {
  return mode == DetectorMode::kRangeBased ? "range" : "inertial";
}

std::optional<DetectorMode> detector_from_name(std::string_view name) {
  if (name == "range") return DetectorMode::kRangeBased;
  if (name == "inertial") return DetectorMode::kInertialBased;
  return std::nullopt;
}

double CollectPolicyState::effective_excitation() const {
  if (excitation) return *excitation;
  return std::sqrt((1.0 + correlation) / (1.0 - correlation));
}

Action sample_action(CollectPolicyState& p, Rng& rng) {
  const double k = p.effective_excitation();
  auto draw = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo) * k;
    return uniform(rng, c - half, c + half);
  };
  const double uv = draw(p.v_min, p.v_max);
  const double uw = draw(p.w_min, p.w_max);
  const double rho = p.correlation;
  Action a{rho * p.prev_action.v + (1.0 - rho) * uv, rho * p.prev_action.w + (1.0 - rho) * uw};
  a.v = std::clamp(a.v, p.v_min, p.v_max);
  a.w = std::clamp(a.w, p.w_min, p.w_max);
  p.prev_action = a;
  return a;
}

bool detect_collision(const sim::SensorFrame& frame, DetectorMode mode,
                      const DetectorConfig& cfg) {
  if (mode == DetectorMode::kRangeBased) return min_range(frame) < cfg.d_near;
  return frame.cmd_v > cfg.v_cmd_min && frame.odom_v < cfg.v_stuck;
}

ResetResult reset_maneuver(const sim::RobotState& state, const sim::TerrainMap& map,
                           DetectorMode mode, const sim::SimConfig& sim_cfg,
                           const DetectorConfig& det_cfg, const ResetConfig& cfg,
                           Rng& rng) {
  ResetResult res{state, false, 0};
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    bool reverse_blocked = false;
    for (int i = 0; i < cfg.back_steps; ++i) {
      res.state = sim::step(res.state, {-cfg.back_speed, 0.0}, map, sim_cfg, rng).next_state;
      if (res.state.measured_v == 0.0) reverse_blocked = true;
      ++res.steps;
    }
    const double mag = uniform(rng, cfg.min_turn, cfg.max_turn);
    const double turn = uniform(rng, 0.0, 1.0) < 0.5 ? -mag : mag;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(turn) / (sim_cfg.w_max * sim_cfg.dt))));
    const double w = turn / (n * sim_cfg.dt);
    for (int i = 0; i < n; ++i) {
      res.state = sim::step(res.state, {0.0, w}, map, sim_cfg, rng).next_state;
      ++res.steps;
    }
    const sim::SensorFrame f = sim::render_sensors(res.state, map, sim_cfg, rng);
    const bool clear = mode == DetectorMode::kRangeBased ? min_range(f) >= det_cfg.d_near
                                                         : !reverse_blocked;
    if (clear) return res;
  }
  if (auto p = nearest_free_pose(map, res.state.x, res.state.y, cfg.relocation_clearance)) {
    res.state.x = p->x;
    res.state.y = p->y;
  }
  res.state.measured_v = 0.0;
  res.state.measured_w = 0.0;
  res.state.commanded_v = 0.0;
  res.state.commanded_w = 0.0;
  res.intervened = true;
  return res;
}

CollectResult collect(const sim::TerrainMap& map, uint64_t steps, DetectorMode mode,
                      uint64_t seed, const CollectConfig& cfg) {
  Rng rng(seed);
  CollectResult out;
  out.records.reserve(steps);

  // Random free start anywhere on the map.
  Pose2 start{map.world_width() / 2, map.world_height() / 2, 0.0};
  for (int tries = 0; tries < 1000; ++tries) {
    const double x = uniform(rng, 0.0, map.world_width());
    const double y = uniform(rng, 0.0, map.world_height());
    if (!map.cell_at(x, y).physically_traversable) continue;
    if (sim::clearance_at(map, x, y, 1.0) < 1.0) continue;
    start = {x, y, uniform(rng, -kPi, kPi)};
    break;
  }
  sim::RobotState state = sim::make_state(start);
  sim::SensorFrame frame = sim::render_sensors(state, map, cfg.sim, rng);

  CollectPolicyState policy;
  policy.correlation = cfg.correlation;
  policy.v_min = cfg.v_min;
  policy.v_max = cfg.v_max;
  policy.w_min = -cfg.w_max;
  policy.w_max = cfg.w_max;

  uint64_t episode = 0;
  for (uint64_t t = 0; t < steps; ++t) {
    RawRecord rec;
    rec.timestamp = t;
    rec.episode_id = episode;
    rec.detector_mode = mode;
    rec.collision_detector_fired = detect_collision(frame, mode, cfg.detector);
    if (rec.collision_detector_fired) {
      rec.frame = std::move(frame);
      out.records.push_back(std::move(rec));
      ++out.stats.detector_firings;
      const ResetResult r =
          reset_maneuver(state, map, mode, cfg.sim, cfg.detector, cfg.reset, rng);
      state = r.state;
      if (r.intervened) ++out.stats.interventions;
      policy.prev_action = {};
      ++episode;
      frame = sim::render_sensors(state, map, cfg.sim, rng);
      continue;
    }
    rec.action = sample_action(policy, rng);
    rec.frame = std::move(frame);
    const Action a = rec.action;
    out.records.push_back(std::move(rec));
    sim::StepOutcome o = sim::step(state, a, map, cfg.sim, rng);
    state = o.next_state;
    frame = std::move(o.frame);
  }
  out.stats.steps = steps;
  out.stats.episodes = out.records.empty() ? 0 : out.records.back().episode_id + 1;
  return out;
}

double lag1_autocorrelation(const std::vector<double>& xs) {
  if (xs.size() < 3) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double d = xs[i] - mean;
    den += d * d;
    if (i + 1 < xs.size()) num += d * (xs[i + 1] - mean);
  }
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace badgr::collector
