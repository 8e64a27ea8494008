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

#include "badgr/planner/planner.h"

#include <algorithm>
#include <stdexcept>

namespace badgr::planner {

std::vector<double> score(const std::vector<model::EventPrediction>& preds, const RewardConfig& rcfg,
                          Vec2 local_goal) {
  std::vector<double> r(preds.size());
  for (size_t n = 0; n < preds.size(); ++n) r[n] = reward(preds[n], rcfg, local_goal);
  return r;
}

PlanResult plan_step(const sim::SensorFrame& frame, PlannerState& ps, PredictiveModel& model,
                     const RewardConfig& rcfg, const PlannerConfig& cfg, Rng& rng) {
  cfg.validate();
  rcfg.validate();
  if (model.horizon() != cfg.horizon) {
    throw std::invalid_argument("plan_step: model horizon " + std::to_string(model.horizon()) +
                                " != planner horizon " + std::to_string(cfg.horizon));
  }
  ps.pose = frame.odom;
  const Vec2 local_goal = to_local(ps.pose, rcfg.goal.x, rcfg.goal.y);

  PlanResult out;
  PlanDiagnostics& d = out.diag;
  d.samples = sample_sequences(ps, cfg, rng);
  d.predictions = model.predict_batch(frame, d.samples);
  d.rewards = score(d.predictions, rcfg, local_goal);
  d.best_sample = static_cast<size_t>(
      std::max_element(d.rewards.begin(), d.rewards.end()) - d.rewards.begin());
  ps.a_hat = reward_weighted_update(d.samples, d.rewards, cfg.gamma);
  for (Action& a : ps.a_hat) a = cfg.bounds.clamp(a);
  out.action = ps.a_hat.front();
  d.chosen = model.predict_batch(frame, {ps.a_hat}).front();
  return out;
}

}  // namespace badgr::planner
