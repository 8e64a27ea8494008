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

#include "badgr/harness/oracle_model.h"

#include <cmath>

namespace badgr::harness {

OracleModel::OracleModel(const sim::TerrainMap& map, const sim::SimConfig& cfg, int horizon,
                         double bump_threshold)
    : map_(map), cfg_(cfg), horizon_(horizon), bump_threshold_(bump_threshold) {}

model::EventPrediction OracleModel::predict_one(const planner::Sequence& seq) const {
  model::EventPrediction p;
  const size_t hz = seq.size();
  p.p_coll.assign(hz, 0.0);
  p.p_bump.assign(hz, 0.0);
  p.pos.resize(hz);
  const Pose2 origin = state_.pose();
  Pose2 pose = origin;
  bool hit = false;
  for (size_t h = 0; h < hz; ++h) {
    const Action a = sim::clamp_action(seq[h], cfg_);
    if (!hit) {
      const double scale = cfg_.bump_gain * map_.cell_at(pose.x, pose.y).bumpiness_coeff * std::abs(a.v);
      p.p_bump[h] = scale > 0 ? std::erfc(bump_threshold_ / (scale * std::sqrt(2.0))) : 0.0;
      const sim::KinematicResult k = sim::kinematic_step(pose, a, map_, cfg_);
      hit = k.blocked;
      pose = k.pose;
    } else {
      p.p_bump[h] = p.p_bump[h - 1];
    }
    p.p_coll[h] = hit ? 1.0 : 0.0;
    const Pose2 rel = relative_pose(origin, pose);
    p.pos[h] = {rel.x, rel.y};
  }
  return p;
}

std::vector<model::EventPrediction> OracleModel::predict_batch(
    const sim::SensorFrame&, const std::vector<planner::Sequence>& seqs) {
  std::vector<model::EventPrediction> out;
  out.reserve(seqs.size());
  for (const auto& s : seqs) out.push_back(predict_one(s));
  return out;
}

}  // namespace badgr::harness
