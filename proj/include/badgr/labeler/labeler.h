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

#ifndef BADGR_LABELER_LABELER_H_
#define BADGR_LABELER_LABELER_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "badgr/collector/collector.h"
#include "badgr/common/geometry.h"
#include "badgr/sim/simworld.h"

namespace badgr::labeler {

class LabelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Events for one future step, expressed in the frame of the window start.
struct EventLabel {
  uint8_t collision = 0;
  uint8_t bumpy = 0;
  Vec2 position;
};

// Collision bit per record: the detector bit recorded during collection.
// Throws LabelError if any record was collected under a different mode.
std::vector<uint8_t> label_collision(std::span<const collector::RawRecord> records,
                                     collector::DetectorMode mode);

// bumpy[t] = imu_w_mag[t] - |commanded w[t]| > threshold_w. The commanded
// turn rate is removed so that deliberate turning is not labelled bumpy.
std::vector<uint8_t> label_bumpiness(std::span<const collector::RawRecord> records,
                                     double threshold_w);

// Odometry positions re-expressed in the frame of records[0]'s odometry pose.
std::vector<Vec2> label_position(std::span<const collector::RawRecord> records);

struct LabelConfig {
  double bump_threshold = 0.5;  // rad/s
  // Unset: label each shard with the mode it was collected under.
  std::optional<collector::DetectorMode> mode;
};

// Per-record labels plus the compact camera observation the model consumes.
// Range scans and inertial readings are not kept: the model never sees them.
struct LabeledDataset {
  int cam_rays = 0;
  int ground_samples = 0;

  std::vector<uint32_t> episode;  // globally unique across shards
  std::vector<Action> action;
  std::vector<uint8_t> collision;
  std::vector<uint8_t> bumpy;
  std::vector<Pose2> odom;
  std::vector<uint8_t> obstacle_class;  // N x W
  std::vector<float> obstacle_dist;     // N x W
  std::vector<uint8_t> ground_class;    // N x W x D

  size_t size() const { return episode.size(); }
  uint32_t num_episodes() const { return episode.empty() ? 0 : episode.back() + 1; }

  // Camera fields of record i as a SensorFrame (non-camera fields zeroed).
  sim::SensorFrame camera_frame(size_t i) const;
};

// Labels one shard's records and appends them, renumbering episodes so ids
// stay unique across shards.
void append_shard(LabeledDataset& ds, std::span<const collector::RawRecord> records,
                  const LabelConfig& cfg);

LabeledDataset merge(const std::vector<const LabeledDataset*>& parts);

struct TrainingSample {
  size_t record = 0;  // index of o_t in the dataset
  std::vector<Action> actions;  // a_t .. a_{t+H-1}
  // labels[h-1] holds the events observed after executing actions[0..h-1].
  std::vector<EventLabel> labels;
  std::vector<uint8_t> mask;  // 0 for padding past a non-collision episode end
};

// One sample per record with at least one later record in its episode.
// After a collision inside the window, later labels are frozen at the
// collision-time values and stay valid; past a non-collision episode end they
// are frozen and masked out. Padded actions repeat the last real action.
std::vector<TrainingSample> build_samples(const LabeledDataset& ds, int horizon);

struct BumpCalibration {
  double threshold = 0.0;
  double speed = 1.0;
  // Fraction of steps labelled bumpy when driving straight at `speed` over
  // each visual class (0 for untraversable classes).
  std::array<double, sim::kNumVisualClasses> rate{};
};

// Measures label rates by simulating straight drives over uniform terrain.
BumpCalibration calibrate_bump_threshold(const sim::SimConfig& sim_cfg, double threshold,
                                         uint64_t seed, int steps = 20000, double speed = 1.0);

}  // namespace badgr::labeler

#endif  // BADGR_LABELER_LABELER_H_
