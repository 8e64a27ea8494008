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

#include "badgr/model/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include "badgr/common/rng.h"
#include "badgr/model/metrics.h"

namespace badgr::model {

nlohmann::json TrainConfig::to_json() const {
  return {{"model", model.to_json()},
          {"lambda_pos", loss.lambda_pos},
          {"lr", adam.lr},
          {"beta1", adam.beta1},
          {"beta2", adam.beta2},
          {"eps", adam.eps},
          {"batch_size", batch_size},
          {"max_epochs", max_epochs},
          {"patience", patience},
          {"val_fraction", val_fraction},
          {"coll_target_ratio", coll_target_ratio},
          {"max_seconds", max_seconds}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  TrainConfig c;
  if (j.contains("model")) c.model = ModelConfig::from_json(j["model"]);
  c.loss.lambda_pos = j.value("lambda_pos", c.loss.lambda_pos);
  c.adam.lr = j.value("lr", c.adam.lr);
  c.adam.beta1 = j.value("beta1", c.adam.beta1);
  c.adam.beta2 = j.value("beta2", c.adam.beta2);
  c.adam.eps = j.value("eps", c.adam.eps);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.max_epochs = j.value("max_epochs", c.max_epochs);
  c.patience = j.value("patience", c.patience);
  c.val_fraction = j.value("val_fraction", c.val_fraction);
  c.coll_target_ratio = j.value("coll_target_ratio", c.coll_target_ratio);
  c.max_seconds = j.value("max_seconds", c.max_seconds);
  return c;
}

std::vector<uint8_t> split_episodes(uint32_t num_episodes, double val_fraction, uint64_t seed) {
  std::vector<uint8_t> is_val(num_episodes, 0);
  if (num_episodes < 2) return is_val;
  std::vector<uint32_t> order(num_episodes);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(seed, 0x5111));
  std::shuffle(order.begin(), order.end(), rng);
  size_t n_val = static_cast<size_t>(std::lround(val_fraction * num_episodes));
  n_val = std::clamp<size_t>(n_val, val_fraction > 0 ? 1 : 0, num_episodes - 1);
  for (size_t i = 0; i < n_val; ++i) is_val[order[i]] = 1;
  return is_val;
}

EvalMetrics evaluate(const Model& model, const labeler::LabeledDataset& ds,
                     std::span<const labeler::TrainingSample* const> samples,
                     const LossConfig& loss_cfg, int batch_size) {
  EvalMetrics m;
  if (samples.empty()) return m;
  std::vector<double> pc, pb;
  std::vector<uint8_t> lc, lb;
  double loss_sum = 0;
  const size_t bs = static_cast<size_t>(std::max(1, batch_size));
  const size_t hz = static_cast<size_t>(model.config().horizon);
  for (size_t start = 0; start < samples.size(); start += bs) {
    auto batch = samples.subspan(start, std::min(bs, samples.size() - start));
    loss_sum += loss(model, ds, batch, loss_cfg, false).loss * static_cast<double>(batch.size());
    BatchPredictions p = predict_samples(model, ds, batch);
    const size_t n = batch.size();
    for (size_t t = 0; t < hz; ++t) {
      for (size_t i = 0; i < n; ++i) {
        if (!batch[i]->mask[t]) continue;
        pc.push_back(p.p_coll[t * n + i]);
        pb.push_back(p.p_bump[t * n + i]);
        lc.push_back(batch[i]->labels[t].collision);
        lb.push_back(batch[i]->labels[t].bumpy);
      }
    }
  }
  m.loss = loss_sum / static_cast<double>(samples.size());
  m.coll_auc = roc_auc(pc, lc);
  m.coll_acc = accuracy(pc, lc);
  m.bump_auc = roc_auc(pb, lb);
  m.bump_acc = accuracy(pb, lb);
  m.steps = pc.size();
  return m;
}

TrainResult train(const labeler::LabeledDataset& ds, const TrainConfig& cfg, uint64_t seed,
                  const Model* init, std::ostream* log) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  if (ds.size() == 0) throw ModelError("train: empty dataset");
  const std::vector<labeler::TrainingSample> samples = labeler::build_samples(ds, cfg.model.horizon);
  if (samples.empty()) throw ModelError("train: dataset yields no training samples");

  TrainResult result{init ? Model(init->config(), init->params()) : Model(cfg.model, derive_seed(seed, 1)),
                     {}, 0, split_episodes(ds.num_episodes(), cfg.val_fraction, seed), 1.0};
  if (init && init->config().to_json() != cfg.model.to_json()) {
    throw ModelError("train: initial model config differs from training config");
  }
  Model model = result.model;
  model.params().reset_optimizer();

  std::vector<const labeler::TrainingSample*> train_set, val_set;
  for (const auto& s : samples) {
    (result.is_val_episode[ds.episode[s.record]] ? val_set : train_set).push_back(&s);
  }
  if (val_set.empty()) val_set = train_set;

  double pos = 0, neg = 0;
  for (const auto* s : train_set) {
    for (size_t t = 0; t < s->mask.size(); ++t) {
      if (!s->mask[t]) continue;
      (s->labels[t].collision ? pos : neg) += 1;
    }
  }
  LossConfig loss_cfg = cfg.loss;
  if (cfg.coll_target_ratio > 0 && pos > 0) {
    loss_cfg.coll_pos_weight = std::max(1.0, cfg.coll_target_ratio * neg / pos);
  }
  result.coll_pos_weight = loss_cfg.coll_pos_weight;

  auto record = [&](int epoch, double train_loss) {
    EvalMetrics v = evaluate(model, ds, val_set, loss_cfg);
    EpochRecord r{epoch, train_loss, v.loss, v.coll_auc, v.coll_acc, v.bump_auc, v.bump_acc, elapsed()};
    result.curve.push_back(r);
    if (log) {
      *log << "epoch " << epoch << " train " << train_loss << " val " << v.loss << " coll_auc "
           << v.coll_auc << " bump_auc " << v.bump_auc << " t " << r.seconds << "s\n";
    }
    return v.loss;
  };

  double best = record(0, evaluate(model, ds, train_set, loss_cfg).loss);
  int bad = 0;
  const size_t bs = static_cast<size_t>(std::max(1, cfg.batch_size));
  std::vector<const labeler::TrainingSample*> order = train_set;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    Rng rng(derive_seed(seed, 1000 + static_cast<uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), rng);
    double sum = 0;
    size_t batch_id = 0;
    for (size_t start = 0; start < order.size(); start += bs, ++batch_id) {
      std::span<const labeler::TrainingSample* const> batch(order.data() + start,
                                                            std::min(bs, order.size() - start));
      try {
        LossResult lr = loss(model, ds, batch, loss_cfg, true);
        diffnet::adam_update(model.params(), lr.grads, cfg.adam);
        sum += lr.loss * static_cast<double>(batch.size());
      } catch (const ModelError& e) {
        throw DivergenceError(std::string("train: ") + e.what() + " at epoch " +
                                  std::to_string(epoch) + " batch " + std::to_string(batch_id),
                              epoch, batch_id);
      } catch (const diffnet::NonFiniteError& e) {
        throw DivergenceError(std::string("train: ") + e.what() + " at epoch " +
                                  std::to_string(epoch) + " batch " + std::to_string(batch_id),
                              epoch, batch_id);
      }
    }
    const double val = record(epoch, sum / static_cast<double>(order.size()));
    if (val < best) {
      best = val;
      bad = 0;
      result.model = model;
      result.best_epoch = epoch;
    } else if (++bad >= cfg.patience) {
      break;
    }
    if (cfg.max_seconds > 0 && elapsed() > cfg.max_seconds) break;
  }
  return result;
}

void write_curve_csv(const std::string& path, const std::vector<EpochRecord>& curve) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_curve_csv: cannot open " + path);
  out << "epoch,train_loss,val_loss,val_coll_auc,val_coll_acc,val_bump_auc,val_bump_acc\n";
  out.precision(9);
  for (const EpochRecord& r : curve) {
    out << r.epoch << ',' << r.train_loss << ',' << r.val_loss << ',' << r.val_coll_auc << ','
        << r.val_coll_acc << ',' << r.val_bump_auc << ',' << r.val_bump_acc << '\n';
  }
}

}  // namespace badgr::model
