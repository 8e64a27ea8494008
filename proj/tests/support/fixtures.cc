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

#include "support/fixtures.h"

#include "badgr/common/rng.h"

namespace badgr::testing {

labeler::LabeledDataset random_dataset(uint64_t seed, int cam_rays, int ground_samples,
                                       const std::vector<int>& lengths) {
  Rng rng(seed);
  labeler::LabeledDataset ds;
  ds.cam_rays = cam_rays;
  ds.ground_samples = ground_samples;
  std::uniform_int_distribution<int> cls(0, sim::kNumVisualClasses - 1);
  for (size_t e = 0; e < lengths.size(); ++e) {
    Pose2 odom{uniform(rng, 0, 5), uniform(rng, 0, 5), uniform(rng, -kPi, kPi)};
    for (int t = 0; t < lengths[e]; ++t) {
      ds.episode.push_back(static_cast<uint32_t>(e));
      const Action a{uniform(rng, 0, 2), uniform(rng, -1.5, 1.5)};
      ds.action.push_back(a);
      ds.collision.push_back(uniform(rng, 0, 1) < 0.2);
      ds.bumpy.push_back(uniform(rng, 0, 1) < 0.4);
      ds.odom.push_back(odom);
      odom.x += 0.25 * a.v * std::cos(odom.heading);
      odom.y += 0.25 * a.v * std::sin(odom.heading);
      odom.heading = wrap_angle(odom.heading + 0.25 * a.w);
      for (int r = 0; r < cam_rays; ++r) {
        const bool hit = uniform(rng, 0, 1) < 0.5;
        ds.obstacle_class.push_back(static_cast<uint8_t>(hit ? cls(rng) : 0));
        ds.obstacle_dist.push_back(hit ? static_cast<float>(uniform(rng, 0.05, 0.95)) : 1.0f);
        for (int d = 0; d < ground_samples; ++d) ds.ground_class.push_back(static_cast<uint8_t>(cls(rng)));
      }
    }
  }
  return ds;
}

model::ModelConfig tiny_model_config() {
  model::ModelConfig c;
  c.cam_rays = 4;
  c.ground_samples = 2;
  c.encoder_sizes = {8, 6};
  c.hidden = 6;
  c.head_hidden = 5;
  c.horizon = 3;
  return c;
}

sim::TerrainMap open_map(int width, int height) {
  sim::TerrainMap m(width, height, 0.5);
  m.set_spawn_region({1, 1, 3, 3});
  m.set_goal_region({width * 0.5 - 3, height * 0.5 - 3, width * 0.5 - 1, height * 0.5 - 1});
  return m;
}

}  // namespace badgr::testing
