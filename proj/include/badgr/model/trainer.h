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

#ifndef BADGR_MODEL_TRAINER_H_
#define BADGR_MODEL_TRAINER_H_

#include <optional>
#include <ostream>
#include <vector>

#include "badgr/model/model.h"

namespace badgr::model {

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, int epoch, size_t batch)
      : std::runtime_error(what), epoch(epoch), batch(batch) {}
  int epoch;
  size_t batch;
};

struct TrainConfig {
  ModelConfig model;
  LossConfig loss;
  diffnet::AdamConfig adam;
  int batch_size = 64;
  int max_epochs = 50;
  int patience = 5;
  double val_fraction = 0.1;
  // Collision-positive steps are weighted up to at least this share of the
  // negatives (0.25 gives the 1:4 effective ratio). 0 disables reweighting.
  double coll_target_ratio = 0.25;
  // Wall-clock cap on the whole run; 0 = none. Stops between epochs.
  double max_seconds = 0.0;

  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
};

struct EpochRecord {
  int epoch = 0;  // 0 = before the first update
  double train_loss = 0.0;
  double val_loss = 0.0;
  double val_coll_auc = 0.0;
  double val_coll_acc = 0.0;
  double val_bump_auc = 0.0;
  double val_bump_acc = 0.0;
  double seconds = 0.0;
};

struct EvalMetrics {
  double loss = 0.0;
  double coll_auc = 0.0;
  double coll_acc = 0.0;
  double bump_auc = 0.0;
  double bump_acc = 0.0;
  size_t steps = 0;
};

struct TrainResult {
  Model model;  // best validation checkpoint
  std::vector<EpochRecord> curve;
  int best_epoch = 0;
  std::vector<uint8_t> is_val_episode;
  double coll_pos_weight = 1.0;
};

// Deterministic episode-level split: each episode lands wholly in one side.
std::vector<uint8_t> split_episodes(uint32_t num_episodes, double val_fraction, uint64_t seed);

// Metrics over every unmasked step of the given samples.
EvalMetrics evaluate(const Model& model, const labeler::LabeledDataset& ds,
                     std::span<const labeler::TrainingSample* const> samples,
                     const LossConfig& loss_cfg, int batch_size = 256);

// Trains from `init` if given, otherwise from a fresh seeded model.
TrainResult train(const labeler::LabeledDataset& ds, const TrainConfig& cfg, uint64_t seed,
                  const Model* init = nullptr, std::ostream* log = nullptr);

// Wall-clock time is left out so the file is reproducible.
void write_curve_csv(const std::string& path, const std::vector<EpochRecord>& curve);

}  // namespace badgr::model

#endif  // BADGR_MODEL_TRAINER_H_
