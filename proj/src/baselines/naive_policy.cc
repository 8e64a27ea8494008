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

#include "badgr/baselines/naive_policy.h"

#include <algorithm>
#include <cmath>

namespace badgr::baselines {

Action naive_policy_step(const Pose2& pose, Vec2 goal, const NaivePolicyConfig& cfg) {
  const double bearing = std::atan2(goal.y - pose.y, goal.x - pose.x);
  const double err = wrap_angle(bearing - pose.heading);
  return {cfg.v_nom, std::clamp(cfg.k_p * err, -cfg.w_max, cfg.w_max)};
}

}  // namespace badgr::baselines
