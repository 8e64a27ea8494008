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

#ifndef BADGR_MODEL_MODEL_H_
#define BADGR_MODEL_MODEL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "badgr/common/geometry.h"
#include "badgr/diffnet/gru.h"
#include "badgr/diffnet/param_store.h"
#include "badgr/labeler/labeler.h"
#include "badgr/sim/simworld.h"

namespace badgr::model {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelConfig {
  int cam_rays = 32;
  int ground_samples = 4;
  std::vector<int> encoder_sizes = {128, 64};  // last entry must equal hidden
  int hidden = 64;
  int head_hidden = 32;
  int horizon = 8;
  // Actions are divided by these before entering the recurrent cell.
  double v_scale = 2.0;
  double w_scale = 1.5;

  int feature_size() const;
  void validate() const;
  nlohmann::json to_json() const;
  static ModelConfig from_json(const nlohmann::json& j);
};

// Head outputs per step, in order.
enum Head : int { kCollLogit = 0, kBumpLogit = 1, kPosX = 2, kPosY = 3, kNumHeads = 4 };

struct EventPrediction {
  std::vector<double> p_coll;
  std::vector<double> p_bump;
  std::vector<Vec2> pos;  // robot-local frame at prediction time

  size_t horizon() const { return p_coll.size(); }
};

struct LossConfig {
  double lambda_pos = 0.1;
  // Multiplier on collision-positive steps in the collision term.
  double coll_pos_weight = 1.0;
};

class Model {
 public:
  // Glorot-uniform weights, zero biases.
  Model(ModelConfig cfg, uint64_t seed);
  // Every parameter zero.
  static Model zeros(ModelConfig cfg);
  Model(ModelConfig cfg, diffnet::ParamStore params);

  const ModelConfig& config() const { return cfg_; }
  diffnet::ParamStore& params() { return params_; }
  const diffnet::ParamStore& params() const { return params_; }

  // Flattened camera fields: obstacle class one-hot (zero for rays with no
  // hit), obstacle distance, ground class one-hot per sample. The range
  // scan and inertial fields are never read.
  std::vector<double> features(const sim::SensorFrame& frame) const;
  void features_into(const labeler::LabeledDataset& ds, size_t record, double* out) const;

  std::vector<double> encode_observation(const sim::SensorFrame& frame) const;
  EventPrediction predict(const sim::SensorFrame& frame, std::span<const Action> actions) const;
  // Same observation, many candidate sequences; the encoder runs once.
  std::vector<EventPrediction> predict_batch(const sim::SensorFrame& frame,
                                             const std::vector<std::vector<Action>>& seqs) const;

  // Graph construction shared by training and inference.
  struct Bound {
    std::vector<diffnet::Var> p;
  };
  Bound bind(diffnet::Tape& tape, bool trainable) const;
  // features [B x F] -> h0 [B x hidden]
  diffnet::Var encode(const Bound& b, diffnet::Var features) const;
  // h0 [B x hidden], actions [H] of [B x 2] (already scaled) ->
  // outputs [(H*B) x 4], step-major.
  diffnet::Var unroll(const Bound& b, diffnet::Var h0, const std::vector<diffnet::Var>& actions) const;

  void save(const std::string& path, const nlohmann::json& metadata) const;
  static Model load(const std::string& path, nlohmann::json* metadata = nullptr);

 private:
  void build(uint64_t seed, bool zero);
  diffnet::GruParams gru(const Bound& b) const;

  ModelConfig cfg_;
  diffnet::ParamStore params_;
  size_t enc_begin_ = 0, gru_begin_ = 0, head_begin_ = 0;
};

struct LossResult {
  double loss = 0.0;
  std::vector<diffnet::Tensor> grads;  // empty unless requested
};

// Mean over the batch of, per sample:
//   BCE(collision) + BCE(bumpy) + lambda_pos * MSE(position)
// with each term averaged over the sample's unmasked steps.
LossResult loss(const Model& model, const labeler::LabeledDataset& ds,
                std::span<const labeler::TrainingSample* const> batch, const LossConfig& cfg,
                bool want_grad);

// Per-step predictions for a batch of samples, index h * B + b.
struct BatchPredictions {
  std::vector<double> p_coll, p_bump;
  std::vector<Vec2> pos;
};
BatchPredictions predict_samples(const Model& model, const labeler::LabeledDataset& ds,
                                 std::span<const labeler::TrainingSample* const> batch);

}  // namespace badgr::model

#endif  // BADGR_MODEL_MODEL_H_
