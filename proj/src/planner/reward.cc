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

#include "badgr/planner/reward.h"

#include <stdexcept>

namespace badgr::planner {

void RewardConfig::validate() const {
  if (!(alpha_pos >= 0) || !(alpha_bum >= 0)) {
    throw std::invalid_argument("RewardConfig: weights must be nonnegative");
  }
}

double step_cost(double p_coll, double p_bump, Vec2 pos, Vec2 local_goal, const RewardConfig& cfg) {
  const double angle = angle_between(pos, local_goal);
  return p_coll * (1.0 + cfg.alpha_pos + cfg.alpha_bum) +
         (1.0 - p_coll) * (cfg.alpha_pos * angle / kPi + cfg.alpha_bum * p_bump);
}

double reward(const model::EventPrediction& pred, const RewardConfig& cfg, Vec2 local_goal) {
  if (pred.p_bump.size() != pred.horizon() || pred.pos.size() != pred.horizon()) {
    throw std::invalid_argument("reward: prediction heads have different lengths");
  }
  double cost = 0.0;
  for (size_t h = 0; h < pred.horizon(); ++h) {
    cost += step_cost(pred.p_coll[h], pred.p_bump[h], pred.pos[h], local_goal, cfg);
  }
  return -cost;
}

}  // namespace badgr::planner
