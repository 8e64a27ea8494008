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
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "badgr/common/hash.h"
#include "badgr/harness/experiments.h"
#include "badgr/harness/policies.h"
#include "badgr/harness/report.h"
#include "badgr/sim/map_gen.h"
#include "support/fixtures.h"

namespace badgr::harness {
namespace {

namespace fs = std::filesystem;

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::path(::testing::TempDir()) / ("badgr_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Config, JsonRoundTrip) {
  const ExperimentConfig c = default_config();
  c.validate();
  const ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
  EXPECT_EQ(back.to_json(), c.to_json());
  EXPECT_EQ(config_hash(back.to_json()), config_hash(c.to_json()));
}

TEST(Config, PartialAndUnknownKeys) {
  const ExperimentConfig c = ExperimentConfig::from_json({{"seed", 9}, {"planner", {{"num_samples", 64}}}});
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.planner.num_samples, 64);
  EXPECT_EQ(c.planner.horizon, 8);
  EXPECT_THROW(ExperimentConfig::from_json({{"planer", {}}}), ConfigError);
  EXPECT_THROW(ExperimentConfig::from_json({{"planner", {{"gama", 1}}}}), ConfigError);
}

TEST(Config, InvalidValuesAreRejected) {
  ExperimentConfig c = default_config();
  c.planner.beta = 2.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = default_config();
  c.train.model.horizon = 5;  // must match the planner horizon
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, OutputRootPrecedence) {
  ::setenv("BADGR_OUT_ROOT", "/tmp/from_env", 1);
  EXPECT_EQ(resolve_out_dir("explicit"), fs::path("explicit"));
  EXPECT_EQ(resolve_out_dir(""), fs::path("/tmp/from_env"));
  ::unsetenv("BADGR_OUT_ROOT");
  EXPECT_EQ(resolve_out_dir(""), fs::path("badgr_out"));
}

RunConfig short_run() {
  RunConfig rc;
  rc.max_steps = 60;
  return rc;
}

TEST(Episode, StartInsideGoalEndsImmediately) {
  const sim::TerrainMap m = sim::make_map(sim::MapKind::kUrban, 0);
  const Vec2 g = m.goal_region().center();
  NaivePolicy p(g, {});
  const RunRecord r = run_episode(m, {g.x, g.y, 0.0}, p, short_run(), 1);
  EXPECT_EQ(r.outcome, Outcome::kReachedGoal);
  EXPECT_TRUE(r.steps.empty());
}

TEST(Episode, NeverExceedsMaxSteps) {
  const sim::TerrainMap m = testing::open_map(200, 200);
  for (uint64_t seed = 0; seed < 3; ++seed) {
    NaivePolicy p({90, 90}, {0.1, 2.0, 1.5});
    const RunRecord r = run_episode(m, {5, 5, 0}, p, short_run(), seed);
    EXPECT_LE(r.steps.size(), 60u);
    EXPECT_EQ(r.outcome, Outcome::kTimeout);
  }
}

TEST(Episode, CollisionEndsTheRun) {
  sim::TerrainMap m = testing::open_map();
  for (int cy = 0; cy < m.height(); ++cy) m.set(12, cy, sim::make_cell(sim::VisualClass::kWall));
  NaivePolicy p({18, 5}, {});
  const RunRecord r = run_episode(m, {4, 5, 0}, p, short_run(), 2);
  EXPECT_EQ(r.outcome, Outcome::kCollided);
  EXPECT_TRUE(r.steps.back().gt_collision);
}

TEST(Episode, LidarTrappedInTallGrass) {
  sim::TerrainMap m = testing::open_map();
  for (int dx = -1; dx <= 1; ++dx)
    for (int dy = -1; dy <= 1; ++dy)
      if (dx || dy) m.set(20 + dx, 20 + dy, sim::make_cell(sim::VisualClass::kTallGrass));
  const Vec2 c = m.cell_center(20, 20);
  const ExperimentConfig cfg = default_config();
  LidarPolicy p({2, 2}, cfg.lidar_config(), cfg.sim.max_range);
  const RunRecord r = run_episode(m, {c.x, c.y, 0.0}, p, cfg.run_config(), 3);
  EXPECT_EQ(r.outcome, Outcome::kTrapped);
  EXPECT_EQ(r.steps.size(), 40u);
  const RunMetrics met = compute_metrics(r, m);
  EXPECT_FALSE(met.entered_tall_grass);
}

TEST(Episode, NdjsonRoundTrip) {
  const sim::TerrainMap m = sim::make_map(sim::MapKind::kUrban, 1);
  const ExperimentConfig cfg = default_config();
  LidarPolicy p(m.goal_region().center(), cfg.lidar_config(), cfg.sim.max_range);
  RunRecord r = run_episode(m, sim::sample_starts(m, 1, 4)[0], p, short_run(), 4);
  r.map = "urban:1";
  std::stringstream ss;
  write_run_ndjson(ss, r);
  const auto back = read_runs_ndjson(ss);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].outcome, r.outcome);
  ASSERT_EQ(back[0].steps.size(), r.steps.size());
  EXPECT_EQ(back[0].steps.back().pose.x, r.steps.back().pose.x);
  EXPECT_EQ(back[0].map, "urban:1");
}

TEST(Stats, SignTestAgainstBinomial) {
  const std::vector<double> a{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 5};
  const std::vector<double> b{2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 5};
  const SignTest t = sign_test(a, b);
  EXPECT_EQ(t.wins, 10);
  EXPECT_EQ(t.ties, 1);
  EXPECT_NEAR(t.p_value, 1.0 / 1024, 1e-15);
  // 7 wins of 10: P(X >= 7) = (120 + 45 + 10 + 1) / 1024.
  const std::vector<double> c{1, 1, 1, 1, 1, 1, 1, 3, 3, 3}, d(10, 2.0);
  EXPECT_NEAR(sign_test(c, d).p_value, 176.0 / 1024, 1e-15);
}

TEST(Stats, StepsRatioOverMutualSuccesses) {
  SuiteResult s;
  auto add = [&](const std::string& pol, int start, Outcome o, int steps) {
    RunRecord r;
    r.policy = pol;
    r.start_index = start;
    r.outcome = o;
    r.steps.resize(static_cast<size_t>(steps));
    s.runs.push_back(r);
  };
  add("a", 0, Outcome::kReachedGoal, 10);
  add("b", 0, Outcome::kReachedGoal, 15);
  add("a", 1, Outcome::kReachedGoal, 10);
  add("b", 1, Outcome::kTrapped, 40);
  EXPECT_DOUBLE_EQ(steps_ratio(s, "a", "b"), 1.5);
}

ExperimentConfig tiny_experiment() {
  ExperimentConfig c = default_config();
  c.urban.map_seeds = {0, 1};
  c.urban.steps = 1200;
  c.train.max_epochs = 2;
  c.train.model.encoder_sizes = {16, 8};
  c.train.model.hidden = 8;
  c.train.model.head_hidden = 8;
  return c;
}

std::vector<uint64_t> all_hashes(const std::vector<StageResult>& stages) {
  std::vector<uint64_t> h;
  for (const auto& s : stages) h.insert(h.end(), s.output_hashes.begin(), s.output_hashes.end());
  return h;
}

TEST(Pipeline, CachesAndReruns) {
  const fs::path root = fresh_dir("pipeline");
  Pipeline p(tiny_experiment(), root);
  const StageResult c1 = p.collect("urban", p.config().urban);
  const StageResult l1 = p.label("urban", c1);
  const StageResult t1 = p.train("urban", {l1});
  EXPECT_FALSE(c1.cached || l1.cached || t1.cached);
  EXPECT_EQ(c1.outputs.size(), 2u);

  const StageResult c2 = p.collect("urban", p.config().urban);
  const StageResult l2 = p.label("urban", c2);
  const StageResult t2 = p.train("urban", {l2});
  EXPECT_TRUE(c2.cached && l2.cached && t2.cached);
  EXPECT_EQ(all_hashes({c1, l1, t1}), all_hashes({c2, l2, t2}));

  fs::remove_all(root / "urban" / "label");
  const StageResult c3 = p.collect("urban", p.config().urban);
  const StageResult l3 = p.label("urban", c3);
  EXPECT_TRUE(c3.cached);
  EXPECT_FALSE(l3.cached);
  EXPECT_EQ(l3.output_hashes, l1.output_hashes);
  EXPECT_TRUE(p.train("urban", {l3}).cached);

  // A corrupted output invalidates its stage.
  std::ofstream(t1.outputs[0], std::ios::app) << " ";
  EXPECT_FALSE(p.train("urban", {l3}).cached);
}

TEST(Pipeline, FreshRunsAreHashIdentical) {
  auto run = [](const std::string& dir) {
    Pipeline p(tiny_experiment(), fresh_dir(dir));
    const StageResult c = p.collect("urban", p.config().urban);
    const StageResult l = p.label("urban", c);
    return all_hashes({c, l, p.train("urban", {l})});
  };
  EXPECT_EQ(run("det_a"), run("det_b"));
}

TEST(Pipeline, ConfigChangeInvalidatesDownstream) {
  const fs::path root = fresh_dir("invalidate");
  ExperimentConfig cfg = tiny_experiment();
  {
    Pipeline p(cfg, root);
    p.run_training_pipeline("urban", cfg.urban);
  }
  cfg.label.bump_threshold = 0.6;
  Pipeline p(cfg, root);
  const StageResult c = p.collect("urban", cfg.urban);
  const StageResult l = p.label("urban", c);
  EXPECT_TRUE(c.cached);
  EXPECT_FALSE(l.cached);
}

TEST(Report, BundleIsCompleteAndDeterministic) {
  const fs::path root = fresh_dir("report");
  const ExperimentConfig cfg = default_config();
  const sim::TerrainMap m = sim::make_map(sim::MapKind::kUrban, 0);
  const Vec2 g = m.goal_region().center();
  run_eval(cfg, "urban", m, "urban:0",
           {{"lidar", [&] { return std::make_unique<LidarPolicy>(g, cfg.lidar_config(), cfg.sim.max_range); }},
            {"naive", [&] { return std::make_unique<NaivePolicy>(g, cfg.naive); }}},
           2, 1, root / "eval" / "urban");
  const std::string first = write_report(root, cfg);
  const std::string svg = slurp(root / "eval" / "urban" / "trajectories.svg");
  const std::string table = slurp(root / "eval" / "urban" / "table.txt");
  EXPECT_NE(first.find("lidar"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_EQ(write_report(root, cfg), first);
  EXPECT_EQ(slurp(root / "eval" / "urban" / "trajectories.svg"), svg);
  EXPECT_EQ(slurp(root / "eval" / "urban" / "table.txt"), table);
}

TEST(Report, TrainedModelSeesTheWall) {
  const fs::path root = fresh_dir("wall");
  ExperimentConfig cfg = default_config();
  cfg.urban.map_seeds = {0, 1, 2};
  cfg.urban.steps = 6000;
  cfg.train.max_epochs = 4;
  Pipeline p(cfg, root);
  const StageResult t = p.run_training_pipeline("urban", cfg.urban);
  const model::Model m = model::Model::load(t.outputs[0].string());
  planner::LearnedModel lm(m);
  const sim::TerrainMap map = sim::make_map(sim::MapKind::kUrban, 0);
  const auto probe = wall_probe_pose(map, 0.75);
  ASSERT_TRUE(probe.has_value());
  const planner::RewardConfig rcfg{1.0, 1.0, map.goal_region().center()};
  const CandidateFan fan = candidate_fan(map, *probe, lm, rcfg, cfg.planner, cfg.sim, 1);
  EXPECT_GE(fan.likely_collisions, 1);
  EXPECT_EQ(candidate_fan(map, *probe, lm, rcfg, cfg.planner, cfg.sim, 1).svg, fan.svg);
}

TEST(Oracle, PredictsTheWall) {
  sim::TerrainMap m = testing::open_map();
  for (int cy = 0; cy < m.height(); ++cy) m.set(12, cy, sim::make_cell(sim::VisualClass::kWall));
  OracleModel o(m, sim::SimConfig{}, 8, 0.5);
  o.set_state(sim::make_state({4.9, 5.0, 0.0}));
  const auto p = o.predict_batch({}, {planner::Sequence(8, Action{1.0, 0.0}), planner::Sequence(8, Action{0.0, 1.0})});
  EXPECT_EQ(p[0].p_coll[3], 0.0);
  EXPECT_EQ(p[0].p_coll[4], 1.0);  // the fifth step would cross x = 6
  for (double c : p[1].p_coll) EXPECT_EQ(c, 0.0);
}

}  // namespace
}  // namespace badgr::harness
