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

#include "badgr/model/model.h"

#include <cmath>

#include "badgr/common/rng.h"
#include "badgr/diffnet/ops.h"

namespace badgr::model {

using diffnet::Shape;
using diffnet::Tape;
using diffnet::Tensor;
using diffnet::Var;

namespace {

constexpr int kClasses = sim::kNumVisualClasses;

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

int ModelConfig::feature_size() const {
  return kClasses * cam_rays + cam_rays + kClasses * cam_rays * ground_samples;
}

void ModelConfig::validate() const {
  if (cam_rays <= 0 || ground_samples <= 0 || hidden <= 0 || head_hidden <= 0 || horizon <= 0) {
    throw ModelError("ModelConfig: sizes must be positive");
  }
  if (encoder_sizes.empty() || encoder_sizes.back() != hidden) {
    throw ModelError("ModelConfig: last encoder size must equal hidden size " +
                     std::to_string(hidden));
  }
  for (int s : encoder_sizes)
    if (s <= 0) throw ModelError("ModelConfig: encoder sizes must be positive");
  if (!(v_scale > 0) || !(w_scale > 0)) throw ModelError("ModelConfig: action scales must be > 0");
}

nlohmann::json ModelConfig::to_json() const {
  return {{"cam_rays", cam_rays},       {"ground_samples", ground_samples},
          {"encoder_sizes", encoder_sizes}, {"hidden", hidden},
          {"head_hidden", head_hidden}, {"horizon", horizon},
          {"v_scale", v_scale},         {"w_scale", w_scale}};
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
  ModelConfig c;
  c.cam_rays = j.value("cam_rays", c.cam_rays);
  c.ground_samples = j.value("ground_samples", c.ground_samples);
  c.encoder_sizes = j.value("encoder_sizes", c.encoder_sizes);
  c.hidden = j.value("hidden", c.hidden);
  c.head_hidden = j.value("head_hidden", c.head_hidden);
  c.horizon = j.value("horizon", c.horizon);
  c.v_scale = j.value("v_scale", c.v_scale);
  c.w_scale = j.value("w_scale", c.w_scale);
  return c;
}

Model::Model(ModelConfig cfg, uint64_t seed) : cfg_(std::move(cfg)) { build(seed, false); }

Model Model::zeros(ModelConfig cfg) {
  Model m(std::move(cfg), 0);
  for (size_t i = 0; i < m.params_.size(); ++i)
    for (double& v : m.params_.value(i).values()) v = 0.0;
  return m;
}

Model::Model(ModelConfig cfg, diffnet::ParamStore params) : cfg_(std::move(cfg)) {
  build(0, true);
  for (size_t i = 0; i < params_.size(); ++i) {
    const auto& e = params_.entry(i);
    if (!params.contains(e.name) || params.value(params.index(e.name)).shape() != e.value.shape()) {
      throw ModelError("Model: parameter store lacks " + e.name + " " +
                       diffnet::shape_str(e.value.shape()));
    }
  }
  if (params.size() != params_.size()) throw ModelError("Model: unexpected extra parameters");
  params_.copy_matching(params);
}

void Model::build(uint64_t seed, bool zero) {
  cfg_.validate();
  Rng rng(seed);
  auto dense = [&](const std::string& name, size_t in, size_t out) {
    const double lim = std::sqrt(6.0 / static_cast<double>(in + out));
    Tensor w({in, out});
    if (!zero)
      for (double& v : w.values()) v = uniform(rng, -lim, lim);
    params_.add(name + ".w", std::move(w));
    params_.add(name + ".b", Tensor({out}, 0.0));
  };
  enc_begin_ = params_.size();
  size_t in = static_cast<size_t>(cfg_.feature_size());
  for (size_t i = 0; i < cfg_.encoder_sizes.size(); ++i) {
    const size_t out = static_cast<size_t>(cfg_.encoder_sizes[i]);
    dense("enc" + std::to_string(i), in, out);
    in = out;
  }
  gru_begin_ = params_.size();
  const size_t h = static_cast<size_t>(cfg_.hidden);
  const double k = 1.0 / std::sqrt(static_cast<double>(h));
  auto gru_tensor = [&](Shape s) {
    Tensor t(std::move(s));
    if (!zero)
      for (double& v : t.values()) v = uniform(rng, -k, k);
    return t;
  };
  params_.add("gru.w_x", gru_tensor({2, 3 * h}));
  params_.add("gru.w_h", gru_tensor({h, 3 * h}));
  params_.add("gru.b_x", Tensor({3 * h}, 0.0));
  params_.add("gru.b_h", Tensor({3 * h}, 0.0));
  head_begin_ = params_.size();
  dense("head0", h, static_cast<size_t>(cfg_.head_hidden));
  dense("head1", static_cast<size_t>(cfg_.head_hidden), kNumHeads);
}

std::vector<double> Model::features(const sim::SensorFrame& frame) const {
  const size_t w = static_cast<size_t>(cfg_.cam_rays);
  const size_t d = static_cast<size_t>(cfg_.ground_samples);
  if (frame.cam_obstacle_class.size() != w || frame.cam_obstacle_dist.size() != w ||
      frame.cam_ground_class.size() != w * d) {
    throw ModelError("features: frame has " + std::to_string(frame.cam_obstacle_class.size()) +
                     " rays and " + std::to_string(frame.cam_ground_class.size()) +
                     " ground samples; model expects " + std::to_string(w) + " and " +
                     std::to_string(w * d));
  }
  std::vector<double> out(static_cast<size_t>(cfg_.feature_size()), 0.0);
  for (size_t r = 0; r < w; ++r) {
    const double dist = frame.cam_obstacle_dist[r];
    if (dist < 1.0) out[r * kClasses + static_cast<size_t>(frame.cam_obstacle_class[r])] = 1.0;
    out[kClasses * w + r] = dist;
  }
  const size_t g0 = (kClasses + 1) * w;
  for (size_t i = 0; i < w * d; ++i) {
    out[g0 + i * kClasses + static_cast<size_t>(frame.cam_ground_class[i])] = 1.0;
  }
  return out;
}

void Model::features_into(const labeler::LabeledDataset& ds, size_t record, double* out) const {
  const size_t w = static_cast<size_t>(cfg_.cam_rays);
  const size_t d = static_cast<size_t>(cfg_.ground_samples);
  if (static_cast<size_t>(ds.cam_rays) != w || static_cast<size_t>(ds.ground_samples) != d) {
    throw ModelError("features: dataset has " + std::to_string(ds.cam_rays) + "x" +
                     std::to_string(ds.ground_samples) + " camera layout; model expects " +
                     std::to_string(w) + "x" + std::to_string(d));
  }
  std::fill_n(out, cfg_.feature_size(), 0.0);
  for (size_t r = 0; r < w; ++r) {
    const double dist = ds.obstacle_dist[record * w + r];
    if (dist < 1.0) out[r * kClasses + ds.obstacle_class[record * w + r]] = 1.0;
    out[kClasses * w + r] = dist;
  }
  const size_t g0 = (kClasses + 1) * w;
  for (size_t i = 0; i < w * d; ++i) {
    out[g0 + i * kClasses + ds.ground_class[record * w * d + i]] = 1.0;
  }
}

Model::Bound Model::bind(Tape& tape, bool trainable) const {
  return {params_.bind(tape, trainable)};
}

Var Model::encode(const Bound& b, Var x) const {
  Var h = x;
  const size_t n = cfg_.encoder_sizes.size();
  for (size_t i = 0; i < n; ++i) {
    Var pre = diffnet::add(diffnet::matmul(h, b.p[enc_begin_ + 2 * i]), b.p[enc_begin_ + 2 * i + 1]);
    h = i + 1 < n ? diffnet::relu(pre) : diffnet::tanh(pre);
  }
  return h;
}

diffnet::GruParams Model::gru(const Bound& b) const {
  return {b.p[gru_begin_], b.p[gru_begin_ + 1], b.p[gru_begin_ + 2], b.p[gru_begin_ + 3]};
}

Var Model::unroll(const Bound& b, Var h0, const std::vector<Var>& actions) const {
  const diffnet::GruParams g = gru(b);
  std::vector<Var> hs;
  Var h = h0;
  for (const Var& a : actions) {
    h = diffnet::gru_cell(h, a, g);
    hs.push_back(h);
  }
  Var all = hs.size() == 1 ? hs[0] : diffnet::concat(hs, 0);
  Var z = diffnet::relu(
      diffnet::add(diffnet::matmul(all, b.p[head_begin_]), b.p[head_begin_ + 1]));
  return diffnet::add(diffnet::matmul(z, b.p[head_begin_ + 2]), b.p[head_begin_ + 3]);
}

std::vector<double> Model::encode_observation(const sim::SensorFrame& frame) const {
  Tape tape(false);
  Bound b = bind(tape, false);
  std::vector<double> f = features(frame);
  const size_t n = f.size();
  Var h = encode(b, tape.constant(Tensor({1, n}, std::move(f))));
  const auto v = h.value().values();
  return {v.begin(), v.end()};
}

EventPrediction Model::predict(const sim::SensorFrame& frame, std::span<const Action> actions) const {
  std::vector<std::vector<Action>> one{{actions.begin(), actions.end()}};
  return predict_batch(frame, one).front();
}

std::vector<EventPrediction> Model::predict_batch(
    const sim::SensorFrame& frame, const std::vector<std::vector<Action>>& seqs) const {
  const size_t hz = static_cast<size_t>(cfg_.horizon);
  for (const auto& s : seqs) {
    if (s.size() != hz) {
      throw ModelError("predict: got " + std::to_string(s.size()) + " actions, horizon is " +
                       std::to_string(hz));
    }
  }
  const size_t n = seqs.size();
  if (n == 0) return {};
  Tape tape(false);
  Bound b = bind(tape, false);
  std::vector<double> f = features(frame);
  const size_t fs = f.size();
  Var h1 = encode(b, tape.constant(Tensor({1, fs}, std::move(f))));
  const size_t hid = static_cast<size_t>(cfg_.hidden);
  Tensor h0({n, hid});
  for (size_t i = 0; i < n; ++i)
    std::copy_n(h1.value().data(), hid, h0.data() + i * hid);
  std::vector<Var> acts;
  for (size_t t = 0; t < hz; ++t) {
    Tensor a({n, 2});
    for (size_t i = 0; i < n; ++i) {
      a[2 * i] = seqs[i][t].v / cfg_.v_scale;
      a[2 * i + 1] = seqs[i][t].w / cfg_.w_scale;
    }
    acts.push_back(tape.constant(std::move(a)));
  }
  const Tensor& o = unroll(b, tape.constant(std::move(h0)), acts).value();
  std::vector<EventPrediction> out(n);
  for (size_t i = 0; i < n; ++i) {
    EventPrediction& p = out[i];
    p.p_coll.resize(hz);
    p.p_bump.resize(hz);
    p.pos.resize(hz);
    for (size_t t = 0; t < hz; ++t) {
      const double* row = o.data() + (t * n + i) * kNumHeads;
      p.p_coll[t] = sigmoid(row[kCollLogit]);
      p.p_bump[t] = sigmoid(row[kBumpLogit]);
      p.pos[t] = {row[kPosX], row[kPosY]};
    }
  }
  return out;
}

void Model::save(const std::string& path, const nlohmann::json& metadata) const {
  nlohmann::json meta = metadata;
  meta["model_config"] = cfg_.to_json();
  diffnet::save_checkpoint(path, params_, meta);
}

Model Model::load(const std::string& path, nlohmann::json* metadata) {
  nlohmann::json meta;
  diffnet::ParamStore store = diffnet::load_checkpoint(path, &meta);
  if (!meta.contains("model_config")) throw ModelError("Model::load: " + path + " has no model_config");
  Model m(ModelConfig::from_json(meta["model_config"]), std::move(store));
  if (metadata) *metadata = meta;
  return m;
}

namespace {

struct BatchGraph {
  Var out;  // [(H*B) x 4]
};

BatchGraph build_batch(const Model& model, Tape& tape, const Model::Bound& b,
                       const labeler::LabeledDataset& ds,
                       std::span<const labeler::TrainingSample* const> batch) {
  const ModelConfig& cfg = model.config();
  const size_t n = batch.size();
  const size_t fs = static_cast<size_t>(cfg.feature_size());
  const size_t hz = static_cast<size_t>(cfg.horizon);
  Tensor x({n, fs});
  for (size_t i = 0; i < n; ++i) {
    if (batch[i]->actions.size() != hz || batch[i]->labels.size() != hz ||
        batch[i]->mask.size() != hz) {
      throw ModelError("loss: sample horizon " + std::to_string(batch[i]->actions.size()) +
                       " does not match model horizon " + std::to_string(hz));
    }
    model.features_into(ds, batch[i]->record, x.data() + i * fs);
  }
  std::vector<Var> acts;
  for (size_t t = 0; t < hz; ++t) {
    Tensor a({n, 2});
    for (size_t i = 0; i < n; ++i) {
      a[2 * i] = batch[i]->actions[t].v / cfg.v_scale;
      a[2 * i + 1] = batch[i]->actions[t].w / cfg.w_scale;
    }
    acts.push_back(tape.constant(std::move(a)));
  }
  Var h0 = model.encode(b, tape.constant(std::move(x)));
  return {model.unroll(b, h0, acts)};
}

}  // namespace

LossResult loss(const Model& model, const labeler::LabeledDataset& ds,
                std::span<const labeler::TrainingSample* const> batch, const LossConfig& cfg,
                bool want_grad) {
  if (batch.empty()) throw ModelError("loss: empty batch");
  Tape tape(want_grad);
  Model::Bound b = model.bind(tape, want_grad);
  BatchGraph g = build_batch(model, tape, b, ds, batch);
  const size_t n = batch.size();
  const size_t hz = static_cast<size_t>(model.config().horizon);
  Tensor target({hz * n, kNumHeads}, 0.0);
  Tensor w_bce({hz * n, kNumHeads}, 0.0);
  Tensor w_pos({hz * n, kNumHeads}, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const labeler::TrainingSample& s = *batch[i];
    double valid = 0;
    for (uint8_t m : s.mask) valid += m ? 1.0 : 0.0;
    if (valid == 0) continue;
    const double base = 1.0 / (valid * static_cast<double>(n));
    for (size_t t = 0; t < hz; ++t) {
      const size_t row = (t * n + i) * kNumHeads;
      const labeler::EventLabel& l = s.labels[t];
      target[row + kCollLogit] = l.collision;
      target[row + kBumpLogit] = l.bumpy;
      target[row + kPosX] = l.position.x;
      target[row + kPosY] = l.position.y;
      if (!s.mask[t]) continue;
      w_bce[row + kCollLogit] = base * (l.collision ? cfg.coll_pos_weight : 1.0);
      w_bce[row + kBumpLogit] = base;
      w_pos[row + kPosX] = w_pos[row + kPosY] = base * cfg.lambda_pos * 0.5;
    }
  }
  Var t = tape.constant(std::move(target));
  Var bce = diffnet::reduce_sum(
      diffnet::mul(diffnet::sigmoid_cross_entropy(g.out, t), tape.constant(std::move(w_bce))));
  Var mse = diffnet::reduce_sum(
      diffnet::mul(diffnet::squared_error(g.out, t), tape.constant(std::move(w_pos))));
  Var total = diffnet::add(bce, mse);
  LossResult r;
  r.loss = total.value()[0];
  if (!std::isfinite(r.loss)) throw ModelError("loss: non-finite value");
  if (want_grad) {
    tape.backward(total);
    r.grads = diffnet::ParamStore::gradients(b.p);
  }
  return r;
}

BatchPredictions predict_samples(const Model& model, const labeler::LabeledDataset& ds,
                                 std::span<const labeler::TrainingSample* const> batch) {
  BatchPredictions p;
  if (batch.empty()) return p;
  Tape tape(false);
  Model::Bound b = model.bind(tape, false);
  const Tensor& o = build_batch(model, tape, b, ds, batch).out.value();
  const size_t rows = o.dim(0);
  p.p_coll.resize(rows);
  p.p_bump.resize(rows);
  p.pos.resize(rows);
  for (size_t r = 0; r < rows; ++r) {
    p.p_coll[r] = sigmoid(o[r * kNumHeads + kCollLogit]);
    p.p_bump[r] = sigmoid(o[r * kNumHeads + kBumpLogit]);
    p.pos[r] = {o[r * kNumHeads + kPosX], o[r * kNumHeads + kPosY]};
  }
  return p;
}

}  // namespace badgr::model
