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
#include "badgr/labeler/dataset_io.h"
#include "badgr/labeler/labeler.h"
#include "badgr/sim/map_gen.h"
#include "support/fixtures.h"

namespace badgr::labeler {
namespace {

using collector::DetectorMode;
using collector::RawRecord;

std::vector<RawRecord> open_field_records(int n, DetectorMode mode) {
  std::vector<RawRecord> r(static_cast<size_t>(n));
  for (size_t i = 0; i < r.size(); ++i) {
    r[i].timestamp = i;
    r[i].detector_mode = mode;
    r[i].frame.odom = {0.25 * static_cast<double>(i), 0.0, 0.0};
  }
  return r;
}

TEST(Collision, PassesDetectorBitThrough) {
  auto r = open_field_records(30, DetectorMode::kRangeBased);
  r[17].collision_detector_fired = true;
  const auto l = label_collision(r, DetectorMode::kRangeBased);
  for (size_t i = 0; i < l.size(); ++i) EXPECT_EQ(l[i], i == 17 ? 1 : 0);
}

TEST(Collision, OpenFieldIsAllZero) {
  const auto l = label_collision(open_field_records(50, DetectorMode::kInertialBased), DetectorMode::kInertialBased);
  for (uint8_t v : l) EXPECT_EQ(v, 0);
}

TEST(Collision, ModeMismatchThrows) {
  const auto r = open_field_records(10, DetectorMode::kRangeBased);
  EXPECT_THROW(label_collision(r, DetectorMode::kInertialBased), LabelError);
  LabeledDataset ds;
  LabelConfig cfg;
  cfg.mode = DetectorMode::kInertialBased;
  EXPECT_THROW(append_shard(ds, r, cfg), LabelError);
}

TEST(Bumpiness, ThresholdRule) {
  std::vector<RawRecord> r(2);
  r[0].frame.imu_w_mag = 0.9;
  r[0].action.w = 0.2;
  r[1].frame.imu_w_mag = 0.2;
  r[1].action.w = -0.2;
  const auto l = label_bumpiness(r, 0.5);
  EXPECT_EQ(l[0], 1);
  EXPECT_EQ(l[1], 0);
}

double bumpy_rate(sim::VisualClass c) {
  const sim::TerrainMap m(600, 8, 0.5, sim::make_cell(c));
  const sim::SimConfig cfg;
  Rng rng(21);
  sim::RobotState s = sim::make_state({1.0, 2.0, 0.0});
  std::vector<RawRecord> recs;
  for (int i = 0; i < 1000; ++i) {
    const Action a{1.0, 0.0};
    const sim::StepOutcome out = sim::step(s, a, m, cfg, rng);
    RawRecord r;
    r.frame = out.frame;
    r.action = a;
    recs.push_back(r);
    s = out.next_state;
  }
  const auto l = label_bumpiness(recs, 0.5);
  double sum = 0;
  for (uint8_t v : l) sum += v;
  return sum / static_cast<double>(l.size());
}

TEST(Bumpiness, ConcreteIsSmootherThanGrass) {
  EXPECT_LT(bumpy_rate(sim::VisualClass::kConcrete), bumpy_rate(sim::VisualClass::kGrass));
}

TEST(Bumpiness, CalibrationHitsTargetRates) {
  const BumpCalibration cal = calibrate_bump_threshold(sim::SimConfig{}, 0.5, 1, 20000);
  EXPECT_NEAR(cal.rate[static_cast<size_t>(sim::VisualClass::kGrass)], 0.4, 0.05);
  EXPECT_LT(cal.rate[static_cast<size_t>(sim::VisualClass::kConcrete)], 0.05);
  EXPECT_EQ(cal.rate[static_cast<size_t>(sim::VisualClass::kWall)], 0.0);
}

std::vector<RawRecord> drive(int steps, Action a, double w_max) {
  sim::SimConfig cfg;
  cfg.odom_sigma_pos = 0;
  cfg.odom_sigma_heading = 0;
  cfg.w_max = w_max;
  const sim::TerrainMap m = testing::open_map(80, 80);
  Rng rng(2);
  sim::RobotState s = sim::make_state({20, 20, 0.4});
  s.odom_x = 3.0;
  s.odom_y = -1.0;
  s.odom_heading = 0.4;
  std::vector<RawRecord> out;
  RawRecord first;
  first.frame = sim::render_sensors(s, m, cfg, rng);
  first.frame.odom = s.odom_pose();
  out.push_back(first);
  for (int i = 0; i < steps; ++i) {
    const sim::StepOutcome o = sim::step(s, a, m, cfg, rng);
    s = o.next_state;
    RawRecord r;
    r.frame = o.frame;
    r.frame.odom = s.odom_pose();
    out.push_back(r);
  }
  return out;
}

TEST(Position, WindowStartIsOrigin) {
  const auto p = label_position(drive(3, {1.0, 0.3}, 1.5));
  EXPECT_EQ(p[0].x, 0.0);
  EXPECT_EQ(p[0].y, 0.0);
}

TEST(Position, StraightLine) {
  const auto p = label_position(drive(4, {1.0, 0.0}, 1.5));
  EXPECT_NEAR(p[4].x, 1.0, 1e-12);
  EXPECT_NEAR(p[4].y, 0.0, 1e-12);
}

TEST(Position, ArcMatchesStepIntegration) {
  const double w = kPi / 2, dt = 0.25;
  const auto p = label_position(drive(4, {1.0, w}, 2.0));
  double x = 0, y = 0, th = 0;
  for (int i = 1; i <= 4; ++i) {
    x += std::cos(th) * dt;
    y += std::sin(th) * dt;
    th += w * dt;
    EXPECT_NEAR(p[static_cast<size_t>(i)].x, x, 1e-6);
    EXPECT_NEAR(p[static_cast<size_t>(i)].y, y, 1e-6);
  }
  // Close to the continuous arc r (sin t, 1 - cos t) at this step size.
  const double r = 1.0 / w, t = w * 1.0;
  EXPECT_NEAR(p[4].x, r * std::sin(t), 0.15);
  EXPECT_NEAR(p[4].y, r * (1 - std::cos(t)), 0.15);
}

TEST(Samples, CountPerEpisode) {
  const auto ds = testing::random_dataset(1, 4, 2, {100});
  EXPECT_EQ(build_samples(ds, 8).size(), 99u);
}

TEST(Samples, WindowsNeverSpanResets) {
  const std::vector<int> lengths{1, 5, 17, 2, 30, 1, 9};
  const auto ds = testing::random_dataset(2, 4, 2, lengths);
  size_t expected = 0;
  for (int len : lengths) expected += static_cast<size_t>(std::max(len - 1, 0));
  const auto samples = build_samples(ds, 8);
  EXPECT_EQ(samples.size(), expected);
  for (const TrainingSample& s : samples) {
    for (size_t h = 1; h <= 8; ++h) {
      // Labels after a collision are frozen copies, not new observations.
      if (h > 1 && s.labels[h - 2].collision) break;
      const size_t idx = s.record + h;
      if (s.mask[h - 1]) {
        ASSERT_LT(idx, ds.size());
        EXPECT_EQ(ds.episode[idx], ds.episode[s.record]);
      }
    }
  }
}

TEST(Samples, CollisionFreezesLaterLabels) {
  auto ds = testing::random_dataset(3, 4, 2, {20});
  for (auto& c : ds.collision) c = 0;
  ds.collision[5 + 3] = 1;
  const auto samples = build_samples(ds, 8);
  const TrainingSample& s = samples[5];
  ASSERT_EQ(s.record, 5u);
  EXPECT_EQ(s.labels[1].collision, 0);
  for (size_t h = 2; h < 8; ++h) {
    EXPECT_EQ(s.labels[h].collision, 1);
    EXPECT_EQ(s.labels[h].position.x, s.labels[2].position.x);
    EXPECT_EQ(s.labels[h].position.y, s.labels[2].position.y);
    EXPECT_EQ(s.mask[h], 1);
  }
}

TEST(Samples, EpisodeEndIsMaskedAndActionsPadded) {
  const auto ds = testing::random_dataset(4, 4, 2, {6});
  const auto samples = build_samples(ds, 8);
  const TrainingSample& s = samples[3];  // records 4 and 5 remain
  EXPECT_EQ(s.mask, (std::vector<uint8_t>{1, 1, 0, 0, 0, 0, 0, 0}));
  for (size_t h = 2; h < 8; ++h) EXPECT_EQ(s.actions[h], s.actions[1]);
}

TEST(Dataset, AppendRenumbersEpisodesAndRoundTrips) {
  const sim::TerrainMap m = sim::make_map(sim::MapKind::kUrban, 0);
  LabeledDataset ds;
  append_shard(ds, collector::collect(m, 400, DetectorMode::kRangeBased, 1).records, {});
  const uint32_t first = ds.num_episodes();
  append_shard(ds, collector::collect(m, 400, DetectorMode::kRangeBased, 2).records, {});
  EXPECT_GT(ds.num_episodes(), first);
  EXPECT_EQ(ds.size(), 800u);
  for (size_t i = 1; i < ds.size(); ++i) EXPECT_GE(ds.episode[i], ds.episode[i - 1]);
  const std::string path = ::testing::TempDir() + "ds.bin";
  write_dataset(ds, path);
  const LabeledDataset back = read_dataset(path);
  EXPECT_EQ(back.episode, ds.episode);
  EXPECT_EQ(back.collision, ds.collision);
  EXPECT_EQ(back.ground_class, ds.ground_class);
  EXPECT_EQ(back.obstacle_dist, ds.obstacle_dist);
}

}  // namespace
}  // namespace badgr::labeler
