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

#ifndef BADGR_PLANNER_REWARD_H_
#define BADGR_PLANNER_REWARD_H_

#include "badgr/common/geometry.h"
#include "badgr/model/model.h"

namespace badgr::planner {

struct RewardConfig {
  double alpha_pos = 1.0;
  double alpha_bum = 0.5;
  Vec2 goal;  // world frame

  void validate() const;
};

// Per-step cost, collision dominated:
//   p_coll * (1 + a_pos + a_bum)
//     + (1 - p_coll) * (a_pos * angle(pos, goal) / pi + a_bum * p_bump)
// angle is in [0, pi] and is pi when pos is the origin.
double step_cost(double p_coll, double p_bump, Vec2 pos, Vec2 local_goal, const RewardConfig& cfg);

// Negated sum of step costs; local_goal is the goal in the robot frame.
double reward(const model::EventPrediction& pred, const RewardConfig& cfg, Vec2 local_goal);

}  // namespace badgr::planner

#endif  // BADGR_PLANNER_REWARD_H_
