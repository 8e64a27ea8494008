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

#include <cmath>

#include <gtest/gtest.h>

#include "badgr/collector/collector.h"
#include "badgr/common/rng.h"
#include "badgr/labeler/labeler.h"
#include "badgr/model/metrics.h"
#include "badgr/model/model.h"
#include "badgr/model/trainer.h"
#include "badgr/sim/map_gen.h"
#include "support/fixtures.h"

namespace badgr::model {
namespace {

using labeler::EventLabel;
using labeler::TrainingSample;

sim::SensorFrame urban_frame(uint64_t seed) {
  const sim::TerrainMap m = sim::make_map(sim::MapKind::kUrban, seed);
  Rng rng(seed);
  return sim::render_sensors(sim::make_state(sim::sample_starts(m, 1, seed)[0]), m, sim::SimConfig{}, rng);
}

TEST(Features, PureAndSized) {
  const Model m(ModelConfig{}, 1);
  const sim::SensorFrame f = urban_frame(1);
  EXPECT_EQ(m.features(f), m.features(f));
  EXPECT_EQ(m.features(f).size(), static_cast<size_t>(ModelConfig{}.feature_size()));
  EXPECT_EQ(m.encode_observation(f).size(), 64u);
}

TEST(Features, IgnoreRangeAndInertialFields) {
  const Model m(ModelConfig{}, 1);
  sim::SensorFrame f = urban_frame(2);
  const auto before = m.encode_observation(f);
  for (double& r : f.range_scan) r = 0.123;
  f.imu_w_mag = 42;
  f.odom = {1, 2, 3};
  EXPECT_EQ(m.encode_observation(f), before);
}

TEST(Features, ZeroParametersGiveZeroEncoding) {
  const Model m = Model::zeros(ModelConfig{});
  for (double v : m.encode_observation(urban_frame(3))) EXPECT_EQ(v, 0.0);
}

TEST(Features, DatasetPathMatchesFramePath) {
  const sim::TerrainMap map = sim::make_map(sim::MapKind::kUrban, 0);
  labeler::LabeledDataset ds;
  const auto recs = collector::collect(map, 50, collector::DetectorMode::kRangeBased, 3).records;
  labeler::append_shard(ds, recs, {});
  const Model m(ModelConfig{}, 2);
  std::vector<double> buf(static_cast<size_t>(m.config().feature_size()));
  for (size_t i = 0; i < ds.size(); i += 7) {
    m.features_into(ds, i, buf.data());
    const auto direct = m.features(recs[i].frame);
    for (size_t k = 0; k < buf.size(); ++k) ASSERT_NEAR(buf[k], direct[k], 1e-6) << i << " " << k;
  }
}

TEST(Predict, ShapesAndRanges) {
  const Model m(ModelConfig{}, 4);
  const std::vector<Action> seq(8, Action{1.0, 0.3});
  const EventPrediction p = m.predict(urban_frame(4), seq);
  ASSERT_EQ(p.horizon(), 8u);
  ASSERT_EQ(p.pos.size(), 8u);
  for (size_t h = 0; h < 8; ++h) {
    EXPECT_GE(p.p_coll[h], 0.0);
    EXPECT_LE(p.p_coll[h], 1.0);
    EXPECT_GE(p.p_bump[h], 0.0);
    EXPECT_LE(p.p_bump[h], 1.0);
  }
  EXPECT_THROW(m.predict(urban_frame(4), std::vector<Action>(5)), ModelError);
}

TEST(Predict, ZeroModelIsMaximallyUncertain) {
  const Model m = Model::zeros(ModelConfig{});
  const EventPrediction p = m.predict(urban_frame(5), std::vector<Action>(8, Action{1, -1}));
  for (size_t h = 0; h < 8; ++h) {
    EXPECT_EQ(p.p_coll[h], 0.5);
    EXPECT_EQ(p.p_bump[h], 0.5);
  }
}

TEST(Predict, BatchMatchesSingle) {
  const Model m(ModelConfig{}, 6);
  const sim::SensorFrame f = urban_frame(6);
  std::vector<std::vector<Action>> seqs;
  Rng rng(1);
  for (int n = 0; n < 5; ++n) {
    std::vector<Action> s;
    for (int h = 0; h < 8; ++h) s.push_back({uniform(rng, 0, 2), uniform(rng, -1.5, 1.5)});
    seqs.push_back(s);
  }
  const auto batch = m.predict_batch(f, seqs);
  for (size_t n = 0; n < seqs.size(); ++n) {
    const EventPrediction one = m.predict(f, seqs[n]);
    for (size_t h = 0; h < 8; ++h) {
      EXPECT_NEAR(batch[n].p_coll[h], one.p_coll[h], 1e-12);
      EXPECT_NEAR(batch[n].pos[h].x, one.pos[h].x, 1e-12);
    }
  }
}

// Zero weights everywhere, so every step outputs the last head bias.
Model constant_head_model(const ModelConfig& cfg, double coll, double bump, double x, double y) {
  Model m = Model::zeros(cfg);
  diffnet::Tensor& b = m.params().value(m.params().index("head1.b"));
  b[0] = coll;
  b[1] = bump;
  b[2] = x;
  b[3] = y;
  return m;
}

TrainingSample sample_with(const std::vector<EventLabel>& labels, const std::vector<uint8_t>& mask) {
  TrainingSample s;
  s.record = 0;
  s.actions.assign(labels.size(), Action{1.0, 0.0});
  s.labels = labels;
  s.mask = mask;
  return s;
}

double bce(double logit, double y) {
  const double p = 1.0 / (1.0 + std::exp(-logit));
  return -(y * std::log(p) + (1 - y) * std::log(1 - p));
}

TEST(Loss, SaturatedPerfectPredictionIsNearZero) {
  const ModelConfig cfg = testing::tiny_model_config();
  const auto ds = testing::random_dataset(1, cfg.cam_rays, cfg.ground_samples, {4});
  const Model m = constant_head_model(cfg, -15, 15, 0.3, -0.2);
  const TrainingSample s = sample_with(std::vector<EventLabel>(3, EventLabel{0, 1, {0.3, -0.2}}), {1, 1, 1});
  const TrainingSample* batch[] = {&s};
  EXPECT_LT(loss(m, ds, batch, LossConfig{}, false).loss, 1e-3);
}

TEST(Loss, HalfProbabilityCostsLn2PerTerm) {
  const ModelConfig cfg = testing::tiny_model_config();
  const auto ds = testing::random_dataset(1, cfg.cam_rays, cfg.ground_samples, {4});
  const Model m = Model::zeros(cfg);
  const TrainingSample s = sample_with({{1, 0, {0, 0}}, {0, 1, {0, 0}}, {1, 1, {0, 0}}}, {1, 1, 1});
  const TrainingSample* batch[] = {&s};
  EXPECT_NEAR(loss(m, ds, batch, LossConfig{}, false).loss, 2 * std::log(2.0), 1e-12);
}

TEST(Loss, MatchesHandComputation) {
  const ModelConfig cfg = testing::tiny_model_config();
  const auto ds = testing::random_dataset(1, cfg.cam_rays, cfg.ground_samples, {4});
  const double c = 0.7, b = -1.2, x = 0.4, y = 0.1;
  const Model m = constant_head_model(cfg, c, b, x, y);
  const TrainingSample s1 = sample_with({{0, 1, {0.2, 0.0}}, {1, 0, {0.5, 0.3}}, {1, 0, {0.5, 0.3}}}, {1, 1, 1});
  const TrainingSample s2 = sample_with({{0, 0, {-0.1, 0.2}}, {0, 1, {0.3, 0.0}}, {0, 1, {0.3, 0.0}}}, {1, 1, 0});
  LossConfig lc;
  lc.lambda_pos = 0.3;
  lc.coll_pos_weight = 2.0;
  // Per sample: mean over unmasked steps of w*BCE(coll) + BCE(bump) +
  // lambda * mean squared position error; then mean over samples.
  auto per_sample = [&](const TrainingSample& s) {
    double sum = 0, n = 0;
    for (size_t h = 0; h < 3; ++h) {
      if (!s.mask[h]) continue;
      const EventLabel& l = s.labels[h];
      const double dx = x - l.position.x, dy = y - l.position.y;
      sum += (l.collision ? 2.0 : 1.0) * bce(c, l.collision) + bce(b, l.bumpy) +
             0.3 * 0.5 * (dx * dx + dy * dy);
      n += 1;
    }
    return sum / n;
  };
  const double expected = 0.5 * (per_sample(s1) + per_sample(s2));
  const TrainingSample* batch[] = {&s1, &s2};
  EXPECT_NEAR(loss(m, ds, batch, lc, false).loss, expected, 1e-9);
}

TEST(Metrics, RocAucAgainstPairCounting) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s;
    std::vector<uint8_t> l;
    for (int i = 0; i < 60; ++i) {
      l.push_back(uniform(rng, 0, 1) < 0.3);
      // Coarse scores so that ties occur.
      s.push_back(std::round(uniform(rng, 0, 1) * 8 + l.back() * 2) / 10);
    }
    double wins = 0, pairs = 0;
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = 0; j < s.size(); ++j)
        if (l[i] && !l[j]) {
          pairs += 1;
          wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
        }
    EXPECT_NEAR(roc_auc(s, l), wins / pairs, 1e-12);
  }
  const std::vector<double> s{0.1, 0.2};
  const std::vector<uint8_t> one_class{1, 1};
  EXPECT_TRUE(std::isnan(roc_auc(s, one_class)));
  const std::vector<uint8_t> l{0, 1};
  EXPECT_EQ(accuracy(s, l, 0.15), 1.0);
}

TEST(Trainer, SplitKeepsEpisodesWhole) {
  const auto split = split_episodes(200, 0.1, 5);
  ASSERT_EQ(split.size(), 200u);
  int val = 0;
  for (uint8_t v : split) val += v;
  EXPECT_EQ(val, 20);
  EXPECT_EQ(split, split_episodes(200, 0.1, 5));
  EXPECT_NE(split, split_episodes(200, 0.1, 6));
}

labeler::LabeledDataset small_urban() {
  labeler::LabeledDataset ds;
  for (uint64_t s = 0; s < 2; ++s) {
    labeler::append_shard(
        ds, collector::collect(sim::make_map(sim::MapKind::kUrban, s), 1500, collector::DetectorMode::kRangeBased, s)
                .records,
        {});
  }
  return ds;
}

TrainConfig quick_config() {
  TrainConfig c;
  c.max_epochs = 3;
  c.model.encoder_sizes = {32, 16};
  c.model.hidden = 16;
  c.model.head_hidden = 16;
  return c;
}

TEST(Trainer, LearnsAndIsDeterministic) {
  const auto ds = small_urban();
  const TrainConfig cfg = quick_config();
  const TrainResult a = train(ds, cfg, 7);
  const TrainResult b = train(ds, cfg, 7);
  EXPECT_EQ(a.model.params().hash(), b.model.params().hash());
  ASSERT_GE(a.curve.size(), 2u);
  EXPECT_LT(a.curve[static_cast<size_t>(a.best_epoch)].val_loss, a.curve.front().val_loss);
  EXPECT_GE(a.coll_pos_weight, 1.0);

  // A trained model conditions on actions: a hard-left tail and a
  // hard-right tail give different collision predictions.
  std::vector<Action> left(8, Action{1.0, 0.0}), right = left;
  for (size_t h = 4; h < 8; ++h) {
    left[h].w = 1.5;
    right[h].w = -1.5;
  }
  const sim::SensorFrame f = urban_frame(9);
  const EventPrediction pl = a.model.predict(f, left), pr = a.model.predict(f, right);
  double diff = 0;
  for (size_t h = 0; h < 8; ++h) diff = std::max(diff, std::abs(pl.p_coll[h] - pr.p_coll[h]));
  EXPECT_GT(diff, 1e-6);
}

TEST(Trainer, CheckpointRoundTrip) {
  const Model m(testing::tiny_model_config(), 3);
  const std::string path = ::testing::TempDir() + "model.ckpt";
  m.save(path, {{"k", 1}});
  nlohmann::json meta;
  const Model back = Model::load(path, &meta);
  EXPECT_EQ(back.params().hash(), m.params().hash());
  EXPECT_EQ(back.config().hidden, m.config().hidden);
  EXPECT_EQ(meta["k"], 1);
}

}  // namespace
}  // namespace badgr::model
