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

#ifndef BADGR_BASELINES_NAIVE_POLICY_H_
#define BADGR_BASELINES_NAIVE_POLICY_H_

#include "badgr/common/geometry.h"

namespace badgr::baselines {

struct NaivePolicyConfig {
  double v_nom = 1.0;
  double k_p = 2.0;
  double w_max = 1.5;
};

// Drives at v_nom, steering proportionally to the wrapped bearing error.
Action naive_policy_step(const Pose2& pose, Vec2 goal, const NaivePolicyConfig& cfg = {});

}  // namespace badgr::baselines

#endif  // BADGR_BASELINES_NAIVE_POLICY_H_
