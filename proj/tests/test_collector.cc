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

#include <algorithm>
#include <cmath>
#include <fstream>

#include <gtest/gtest.h>

#include "badgr/collector/collector.h"
#include "badgr/collector/record_io.h"
#include "badgr/common/hash.h"
#include "badgr/common/rng.h"
#include "badgr/sim/map_gen.h"
#include "support/fixtures.h"

namespace badgr::collector {
namespace {

using testing::open_map;

// Two-sided one-sample KS statistic against U(lo, hi).
double ks_uniform(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double f = (xs[i] - lo) / (hi - lo);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

TEST(SampleAction, UncorrelatedIsUniformOverTheBox) {
  CollectPolicyState s;
  s.correlation = 0.0;
  Rng rng(1);
  std::vector<double> v, w;
  for (int i = 0; i < 10000; ++i) {
    const Action a = sample_action(s, rng);
    v.push_back(a.v);
    w.push_back(a.w);
  }
  // Critical value at alpha = 0.01.
  const double crit = 1.628 / std::sqrt(10000.0);
  EXPECT_LT(ks_uniform(v, s.v_min, s.v_max), crit);
  EXPECT_LT(ks_uniform(w, s.w_min, s.w_max), crit);
}

TEST(SampleAction, Lag1AutocorrelationMatchesRho) {
  CollectPolicyState s;
  s.correlation = 0.9;
  Rng rng(2);
  std::vector<double> w;
  for (int i = 0; i < 10000; ++i) w.push_back(sample_action(s, rng).w);
  const double r = lag1_autocorrelation(w);
  EXPECT_GE(r, 0.85);
  EXPECT_LE(r, 0.95);
}

TEST(SampleAction, StaysInsideBounds) {
  CollectPolicyState s;
  Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const Action a = sample_action(s, rng);
    ASSERT_GE(a.v, 0.0);
    ASSERT_LE(a.v, 2.0);
    ASSERT_GE(a.w, -1.5);
    ASSERT_LE(a.w, 1.5);
  }
}

TEST(Lag1Autocorrelation, KnownSeries) {
  EXPECT_NEAR(lag1_autocorrelation({1, -1, 1, -1, 1, -1}), -1.0, 0.2);
  EXPECT_GT(lag1_autocorrelation({1, 2, 3, 4, 5, 6}), 0.4);
}

sim::SensorFrame frame_with(double min_range, double cmd_v, double odom_v) {
  sim::SensorFrame f;
  f.range_scan.assign(72, 10.0);
  f.range_scan[5] = min_range;
  f.cmd_v = cmd_v;
  f.odom_v = odom_v;
  return f;
}

TEST(Detector, RangeThreshold) {
  const DetectorConfig cfg;
  EXPECT_TRUE(detect_collision(frame_with(0.2, 1.0, 1.0), DetectorMode::kRangeBased, cfg));
  EXPECT_FALSE(detect_collision(frame_with(10.0, 1.0, 1.0), DetectorMode::kRangeBased, cfg));
}

TEST(Detector, InertialStuck) {
  const DetectorConfig cfg;
  EXPECT_TRUE(detect_collision(frame_with(10.0, 1.0, 0.0), DetectorMode::kInertialBased, cfg));
  EXPECT_FALSE(detect_collision(frame_with(0.2, 1.0, 1.0), DetectorMode::kInertialBased, cfg));
  EXPECT_FALSE(detect_collision(frame_with(10.0, 0.0, 0.0), DetectorMode::kInertialBased, cfg));
}

double min_range(const sim::SensorFrame& f) { return *std::min_element(f.range_scan.begin(), f.range_scan.end()); }

TEST(Reset, BacksAwayFromWall) {
  sim::TerrainMap m = open_map();
  for (int cy = 0; cy < m.height(); ++cy) m.set(12, cy, sim::make_cell(sim::VisualClass::kWall));
  const sim::SimConfig sim_cfg;
  const DetectorConfig det;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const ResetResult r = reset_maneuver(sim::make_state({5.9, 5.0, 0.0}), m, DetectorMode::kRangeBased,
                                         sim_cfg, det, ResetConfig{}, rng);
    Rng probe(0);
    EXPECT_GE(min_range(sim::render_sensors(r.state, m, sim_cfg, probe)), det.d_near) << "seed " << seed;
    EXPECT_FALSE(r.intervened);
  }
}

TEST(Reset, SpuriousTriggerInOpenField) {
  const sim::TerrainMap m = open_map();
  Rng rng(4);
  const sim::RobotState start = sim::make_state({10, 10, 0.3});
  const ResetResult r =
      reset_maneuver(start, m, DetectorMode::kRangeBased, sim::SimConfig{}, DetectorConfig{}, ResetConfig{}, rng);
  EXPECT_FALSE(r.intervened);
  EXPECT_TRUE(r.state.x != start.x || r.state.y != start.y || r.state.heading != start.heading);
}

TEST(Reset, BoxedInIsRelocated) {
  sim::TerrainMap m = open_map();
  for (int cx = 8; cx <= 12; ++cx)
    for (int cy = 8; cy <= 12; ++cy)
      if (cx != 10 || cy != 10) m.set(cx, cy, sim::make_cell(sim::VisualClass::kWall));
  const Vec2 c = m.cell_center(10, 10);
  Rng rng(5);
  const ResetResult r = reset_maneuver(sim::make_state({c.x, c.y, 0.0}), m, DetectorMode::kRangeBased,
                                       sim::SimConfig{}, DetectorConfig{}, ResetConfig{}, rng);
  EXPECT_TRUE(r.intervened);
  EXPECT_TRUE(m.cell_at(r.state.x, r.state.y).physically_traversable);
  EXPECT_GE(sim::clearance_at(m, r.state.x, r.state.y, 2.0), 1.0 - 1e-9);
}

TEST(Collect, RecordCountAndEpisodes) {
  const sim::TerrainMap m = sim::make_map(sim::MapKind::kUrban, 0);
  const CollectResult r = collect(m, 1000, DetectorMode::kRangeBased, 7);
  ASSERT_EQ(r.records.size(), 1000u);
  EXPECT_EQ(r.stats.steps, 1000u);
  uint64_t firings = 0;
  for (size_t i = 0; i < r.records.size(); ++i) {
    const RawRecord& rec = r.records[i];
    EXPECT_EQ(rec.timestamp, i);
    EXPECT_EQ(rec.detector_mode, DetectorMode::kRangeBased);
    if (i + 1 < r.records.size()) {
      const uint64_t expected = rec.episode_id + (rec.collision_detector_fired ? 1 : 0);
      EXPECT_EQ(r.records[i + 1].episode_id, expected) << "record " << i;
    }
    firings += rec.collision_detector_fired;
  }
  EXPECT_GT(firings, 0u);
  EXPECT_EQ(firings, r.stats.detector_firings);
}

TEST(Collect, DetectorModeIsRecorded) {
  const CollectResult off = collect(sim::make_map(sim::MapKind::kOffRoad, 0), 300, DetectorMode::kInertialBased, 1);
  for (const RawRecord& r : off.records) EXPECT_EQ(r.detector_mode, DetectorMode::kInertialBased);
}

TEST(Collect, SameSeedGivesIdenticalShards) {
  const sim::TerrainMap m = sim::make_map(sim::MapKind::kUrban, 1);
  const std::string a = ::testing::TempDir() + "a.bin", b = ::testing::TempDir() + "b.bin";
  write_shard(collect(m, 800, DetectorMode::kRangeBased, 9).records, a);
  write_shard(collect(m, 800, DetectorMode::kRangeBased, 9).records, b);
  EXPECT_EQ(hash_file(a), hash_file(b));
  write_shard(collect(m, 800, DetectorMode::kRangeBased, 10).records, b);
  EXPECT_NE(hash_file(a), hash_file(b));
}

TEST(RecordIo, RoundTrip) {
  const CollectResult r = collect(sim::make_map(sim::MapKind::kOffRoad, 2), 200, DetectorMode::kInertialBased, 3);
  const std::string path = ::testing::TempDir() + "shard.bin";
  write_shard(r.records, path);
  const auto back = read_shard(path);
  ASSERT_EQ(back.size(), r.records.size());
  for (size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].action, r.records[i].action);
    EXPECT_EQ(back[i].episode_id, r.records[i].episode_id);
    EXPECT_EQ(back[i].frame.cam_ground_class, r.records[i].frame.cam_ground_class);
    EXPECT_EQ(back[i].frame.odom.x, r.records[i].frame.odom.x);
    for (size_t k = 0; k < back[i].frame.range_scan.size(); ++k)
      EXPECT_FLOAT_EQ(back[i].frame.range_scan[k], r.records[i].frame.range_scan[k]);
  }
  std::ofstream(path, std::ios::binary) << "BADGRXXX";
  EXPECT_THROW(read_shard(path), std::exception);
}

}  // namespace
}  // namespace badgr::collector
