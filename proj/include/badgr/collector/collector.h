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

#ifndef BADGR_COLLECTOR_COLLECTOR_H_
#define BADGR_COLLECTOR_COLLECTOR_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "badgr/common/geometry.h"
#include "badgr/common/rng.h"
#include "badgr/sim/simworld.h"
#include "badgr/sim/terrain.h"

namespace badgr::collector {

enum class DetectorMode : uint8_t { kRangeBased = 0, kInertialBased = 1 };

std::string_view detector_name(DetectorMode mode);
std::optional<DetectorMode> detector_from_name(std::string_view name);

// Time-correlated random walk: a_t = rho * a_{t-1} + (1 - rho) * u.
//
// u is drawn uniformly from the action box scaled about its center by
// `excitation`. With the default (variance-matched) excitation the walk's
// stationary spread matches the box instead of collapsing toward its center
// as rho -> 1; at rho = 0 the excitation is 1 and actions are plain i.i.d.
// uniform. Emitted actions are clamped to the box.
struct CollectPolicyState {
  Action prev_action;
  double correlation = 0.9;  // rho in [0, 1)
  double v_min = 0.0;
  double v_max = 2.0;
  double w_min = -1.5;
  double w_max = 1.5;
  std::optional<double> excitation;  // unset: variance-matched

  double effective_excitation() const;
};

Action sample_action(CollectPolicyState& pstate, Rng& rng);

struct DetectorConfig {
  double d_near = 0.3;     // m, range detector threshold
  double v_cmd_min = 0.2;  // m/s, commanded speed that counts as "driving"
  double v_stuck = 0.05;   // m/s, measured speed that counts as "stopped"
};

bool detect_collision(const sim::SensorFrame& frame, DetectorMode mode,
                      const DetectorConfig& cfg);

struct ResetConfig {
  int back_steps = 4;
  double back_speed = 0.5;  // m/s, magnitude
  double min_turn = kPi / 2;
  double max_turn = kPi;
  int max_attempts = 3;
  double relocation_clearance = 1.0;  // m
};

struct ResetResult {
  sim::RobotState state;
  bool intervened = false;  // relocated after max_attempts failed
  int steps = 0;
};

// Back up, then rotate in place by a random +-[min_turn, max_turn]. When the
// robot is still blocked after `max_attempts`, it is relocated to the nearest
// free pose (the simulated equivalent of a person resetting it).
ResetResult reset_maneuver(const sim::RobotState& state, const sim::TerrainMap& map,
                           DetectorMode mode, const sim::SimConfig& sim_cfg,
                           const DetectorConfig& det_cfg, const ResetConfig& cfg,
                           Rng& rng);

struct RawRecord {
  uint64_t timestamp = 0;
  sim::SensorFrame frame;
  Action action;
  uint64_t episode_id = 0;
  bool collision_detector_fired = false;
  DetectorMode detector_mode = DetectorMode::kRangeBased;

  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

struct CollectConfig {
  sim::SimConfig sim;
  DetectorConfig detector;
  ResetConfig reset;
  double correlation = 0.9;
  double v_min = 0.0;
  double v_max = 2.0;
  double w_max = 1.5;
};

struct CollectStats {
  uint64_t steps = 0;
  uint64_t episodes = 0;
  uint64_t detector_firings = 0;
  uint64_t interventions = 0;
};

struct CollectResult {
  std::vector<RawRecord> records;
  CollectStats stats;
};

// Runs the sample / step / detect / reset loop for `steps` recorded steps.
// A firing record ends its episode; the reset maneuver itself is not recorded.
CollectResult collect(const sim::TerrainMap& map, uint64_t steps, DetectorMode mode,
                      uint64_t seed, const CollectConfig& cfg = {});

// Lag-1 sample autocorrelation.
double lag1_autocorrelation(const std::vector<double>& xs);

}  // namespace badgr::collector

#endif  // BADGR_COLLECTOR_COLLECTOR_H_
