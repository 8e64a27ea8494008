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

#include "badgr/labeler/labeler.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "badgr/sim/terrain.h"

namespace badgr::labeler {

using collector::DetectorMode;
using collector::RawRecord;

std::vector<uint8_t> label_collision(std::span<const RawRecord> records, DetectorMode mode) {
  std::vector<uint8_t> out(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    if (records[i].detector_mode != mode) {
      throw LabelError("record " + std::to_string(records[i].timestamp) + " was collected with the " +
                       std::string(collector::detector_name(records[i].detector_mode)) +
                       " detector but labelling requested " +
                       std::string(collector::detector_name(mode)));
    }
    out[i] = records[i].collision_detector_fired ? 1 : 0;
  }
  return out;
}

std::vector<uint8_t> label_bumpiness(std::span<const RawRecord> records, double threshold_w) {
  std::vector<uint8_t> out(records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    const auto& f = records[i].frame;
    out[i] = f.imu_w_mag - std::abs(f.cmd_w) > threshold_w ? 1 : 0;
  }
  return out;
}

std::vector<Vec2> label_position(std::span<const RawRecord> records) {
  std::vector<Vec2> out(records.size());
  if (records.empty()) return out;
  const Pose2 origin = records.front().frame.odom;
  for (size_t i = 0; i < records.size(); ++i) {
    out[i] = to_local(origin, records[i].frame.odom.x, records[i].frame.odom.y);
  }
  return out;
}

sim::SensorFrame LabeledDataset::camera_frame(size_t i) const {
  sim::SensorFrame f;
  const size_t w = static_cast<size_t>(cam_rays), d = static_cast<size_t>(ground_samples);
  f.cam_obstacle_class.resize(w);
  f.cam_obstacle_dist.resize(w);
  f.cam_ground_class.resize(w * d);
  for (size_t k = 0; k < w; ++k) {
    f.cam_obstacle_class[k] = static_cast<sim::VisualClass>(obstacle_class[i * w + k]);
    f.cam_obstacle_dist[k] = obstacle_dist[i * w + k];
  }
  for (size_t k = 0; k < w * d; ++k) {
    f.cam_ground_class[k] = static_cast<sim::VisualClass>(ground_class[i * w * d + k]);
  }
  f.odom = odom[i];
  return f;
}

void append_shard(LabeledDataset& ds, std::span<const RawRecord> records, const LabelConfig& cfg) {
  if (records.empty()) return;
  const DetectorMode mode = cfg.mode.value_or(records.front().detector_mode);
  const std::vector<uint8_t> coll = label_collision(records, mode);
  const std::vector<uint8_t> bump = label_bumpiness(records, cfg.bump_threshold);

  const auto& f0 = records.front().frame;
  const int w = static_cast<int>(f0.cam_obstacle_class.size());
  const int d = w == 0 ? 0 : static_cast<int>(f0.cam_ground_class.size()) / w;
  if (ds.size() == 0) {
    ds.cam_rays = w;
    ds.ground_samples = d;
  } else if (ds.cam_rays != w || ds.ground_samples != d) {
    throw LabelError("shard camera dimensions differ from the dataset");
  }

  const uint32_t base = ds.num_episodes();
  const uint64_t first_episode = records.front().episode_id;
  for (size_t i = 0; i < records.size(); ++i) {
    const RawRecord& r = records[i];
    if (i > 0 && r.episode_id < records[i - 1].episode_id) {
      throw LabelError("shard episodes are not contiguous");
    }
    ds.episode.push_back(base + static_cast<uint32_t>(r.episode_id - first_episode));
    ds.action.push_back(r.action);
    ds.collision.push_back(coll[i]);
    ds.bumpy.push_back(bump[i]);
    ds.odom.push_back(r.frame.odom);
    for (auto c : r.frame.cam_obstacle_class) ds.obstacle_class.push_back(static_cast<uint8_t>(c));
    for (double x : r.frame.cam_obstacle_dist) ds.obstacle_dist.push_back(static_cast<float>(x));
    for (auto c : r.frame.cam_ground_class) ds.ground_class.push_back(static_cast<uint8_t>(c));
  }
}

LabeledDataset merge(const std::vector<const LabeledDataset*>& parts) {
  LabeledDataset out;
  for (const LabeledDataset* p : parts) {
    if (p->size() == 0) continue;
    if (out.size() == 0) {
      out.cam_rays = p->cam_rays;
      out.ground_samples = p->ground_samples;
    } else if (out.cam_rays != p->cam_rays || out.ground_samples != p->ground_samples) {
      throw LabelError("merge: camera dimensions differ");
    }
    const uint32_t base = out.num_episodes();
    for (uint32_t e : p->episode) out.episode.push_back(base + e);
    out.action.insert(out.action.end(), p->action.begin(), p->action.end());
    out.collision.insert(out.collision.end(), p->collision.begin(), p->collision.end());
    out.bumpy.insert(out.bumpy.end(), p->bumpy.begin(), p->bumpy.end());
    out.odom.insert(out.odom.end(), p->odom.begin(), p->odom.end());
    out.obstacle_class.insert(out.obstacle_class.end(), p->obstacle_class.begin(), p->obstacle_class.end());
    out.obstacle_dist.insert(out.obstacle_dist.end(), p->obstacle_dist.begin(), p->obstacle_dist.end());
    out.ground_class.insert(out.ground_class.end(), p->ground_class.begin(), p->ground_class.end());
  }
  return out;
}

std::vector<TrainingSample> build_samples(const LabeledDataset& ds, int horizon) {
  if (horizon < 1) throw std::invalid_argument("build_samples: horizon must be >= 1");
  const size_t n = ds.size();
  const size_t hz = static_cast<size_t>(horizon);
  std::vector<TrainingSample> out;
  size_t begin = 0;
  while (begin < n) {
    size_t end = begin;  // last index of this episode
    while (end + 1 < n && ds.episode[end + 1] == ds.episode[begin]) ++end;
    for (size_t t = begin; t < end; ++t) {
      TrainingSample s;
      s.record = t;
      s.actions.resize(hz);
      s.labels.resize(hz);
      s.mask.assign(hz, 1);
      const Pose2 origin = ds.odom[t];
      bool collided = false;
      for (size_t h = 1; h <= hz; ++h) {
        const size_t idx = t + h;
        const size_t act = std::min(t + h - 1, end - 1);
        s.actions[h - 1] = ds.action[act];
        if (collided) {
          s.labels[h - 1] = s.labels[h - 2];
          continue;
        }
        if (idx > end) {
          s.labels[h - 1] = s.labels[h - 2];
          s.mask[h - 1] = 0;
          continue;
        }
        EventLabel& e = s.labels[h - 1];
        e.collision = ds.collision[idx];
        e.bumpy = ds.bumpy[idx];
        e.position = to_local(origin, ds.odom[idx].x, ds.odom[idx].y);
        if (e.collision) collided = true;
      }
      out.push_back(std::move(s));
    }
    begin = end + 1;
  }
  return out;
}

BumpCalibration calibrate_bump_threshold(const sim::SimConfig& sim_cfg, double threshold,
                                         uint64_t seed, int steps, double speed) {
  BumpCalibration cal;
  cal.threshold = threshold;
  cal.speed = speed;
  for (int c = 0; c < sim::kNumVisualClasses; ++c) {
    const sim::TerrainCell cell = sim::make_cell(static_cast<sim::VisualClass>(c));
    if (!cell.physically_traversable) continue;
    // A long strip of uniform terrain; the robot is re-centred every tick.
    sim::TerrainMap strip(8, 8, 0.5, cell);
    Rng rng(derive_seed(seed, static_cast<uint64_t>(c)));
    sim::RobotState s = sim::make_state({2.0, 2.0, 0.0});
    s.measured_v = speed;
    int bumpy = 0;
    for (int i = 0; i < steps; ++i) {
      s.x = 1.0;
      s.y = 2.0;
      s.heading = 0.0;
      const sim::StepOutcome o = sim::step(s, {speed, 0.0}, strip, sim_cfg, rng);
      s = o.next_state;
      if (o.frame.imu_w_mag - std::abs(o.frame.cmd_w) > threshold) ++bumpy;
    }
    cal.rate[static_cast<size_t>(c)] = static_cast<double>(bumpy) / steps;
  }
  return cal;
}

}  // namespace badgr::labeler
