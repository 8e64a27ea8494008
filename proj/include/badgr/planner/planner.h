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

#ifndef BADGR_PLANNER_PLANNER_H_
#define BADGR_PLANNER_PLANNER_H_

#include <span>
#include <vector>

#include "badgr/common/geometry.h"
#include "badgr/common/rng.h"
#include "badgr/model/model.h"
#include "badgr/planner/reward.h"
#include "badgr/sim/simworld.h"

namespace badgr::planner {

using Sequence = std::vector<Action>;

struct ActionBounds {
  double v_min = 1.0;
  double v_max = 1.0;
  double w_min = -1.5;
  double w_max = 1.5;

  Action clamp(Action a) const;
};

struct PlannerConfig {
  int num_samples = 256;
  int horizon = 8;
  double sigma_v = 0.3;
  double sigma_w = 0.4;
  double beta = 0.6;
  double gamma = 10.0;
  ActionBounds bounds;

  void validate() const;
};

struct PlannerState {
  Sequence a_hat;  // running estimate, length H
  Pose2 pose;      // odometry estimate used to localise the goal
};

// a_hat starts at the bounds-clamped zero action.
PlannerState make_planner_state(const PlannerConfig& cfg);

// Anything that maps one observation and many action sequences to event
// predictions over the planner horizon.
class PredictiveModel {
 public:
  virtual ~PredictiveModel() = default;
  virtual int horizon() const = 0;
  virtual std::vector<model::EventPrediction> predict_batch(
      const sim::SensorFrame& frame, const std::vector<Sequence>& seqs) = 0;
};

class LearnedModel : public PredictiveModel {
 public:
  explicit LearnedModel(const model::Model& m) : model_(m) {}
  int horizon() const override { return model_.config().horizon; }
  std::vector<model::EventPrediction> predict_batch(const sim::SensorFrame& frame,
                                                    const std::vector<Sequence>& seqs) override {
    return model_.predict_batch(frame, seqs);
  }

 private:
  const model::Model& model_;
};

// eps ~ N(0, diag(sigma)); a~_h = beta (a^_{h+1} + eps_h) + (1 - beta) a~_{h-1}
// with a~_{-1} = 0 and a^_H = a^_{H-1}; every entry clamped to the bounds.
// Noise is drawn sample by sample, step by step, v before w.
std::vector<Sequence> sample_sequences(const PlannerState& ps, const PlannerConfig& cfg, Rng& rng);

// Softmax(gamma * R)-weighted mean of the samples. Throws on non-finite
// rewards or mismatched sizes.
Sequence reward_weighted_update(const std::vector<Sequence>& samples,
                                std::span<const double> rewards, double gamma);

// I.i.d. uniform sequences inside the bounds.
std::vector<Sequence> random_shooting(const PlannerConfig& cfg, Rng& rng);

std::vector<double> score(const std::vector<model::EventPrediction>& preds,
                          const RewardConfig& rcfg, Vec2 local_goal);

struct PlanDiagnostics {
  std::vector<Sequence> samples;
  std::vector<double> rewards;
  std::vector<model::EventPrediction> predictions;
  model::EventPrediction chosen;  // prediction for the updated estimate
  size_t best_sample = 0;
};

struct PlanResult {
  Action action;
  PlanDiagnostics diag;
};

// One MPC step: sample around the shifted estimate, evaluate, reweight,
// store the new estimate in `ps` and return its first action.
PlanResult plan_step(const sim::SensorFrame& frame, PlannerState& ps, PredictiveModel& model,
                     const RewardConfig& rcfg, const PlannerConfig& cfg, Rng& rng);

}  // namespace badgr::planner

#endif  // BADGR_PLANNER_PLANNER_H_
