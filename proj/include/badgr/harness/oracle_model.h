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

#ifndef BADGR_HARNESS_ORACLE_MODEL_H_
#define BADGR_HARNESS_ORACLE_MODEL_H_

#include "badgr/planner/planner.h"
#include "badgr/sim/simworld.h"

namespace badgr::harness {

// The simulator itself used as the predictive model: noise-free kinematic
// rollouts from the true pose. p_coll is 1 from the first blocked step on,
// p_bump is the exact probability that the injected noise exceeds the
// labelling threshold on the cell the step starts from.
class OracleModel : public planner::PredictiveModel {
 public:
  OracleModel(const sim::TerrainMap& map, const sim::SimConfig& cfg, int horizon,
              double bump_threshold);

  void set_state(const sim::RobotState& state) { state_ = state; }
  int horizon() const override { return horizon_; }
  std::vector<model::EventPrediction> predict_batch(
      const sim::SensorFrame& frame, const std::vector<planner::Sequence>& seqs) override;

  model::EventPrediction predict_one(const planner::Sequence& seq) const;

 private:
  const sim::TerrainMap& map_;
  sim::SimConfig cfg_;
  int horizon_;
  double bump_threshold_;
  sim::RobotState state_;
};

}  // namespace badgr::harness

#endif  // BADGR_HARNESS_ORACLE_MODEL_H_
