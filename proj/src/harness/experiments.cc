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

#include "badgr/harness/experiments.h"

#include <cmath>
#include <fstream>
#include <limits>

#include "badgr/common/hash.h"
#include "badgr/common/rng.h"

namespace badgr::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string map_label(sim::MapKind kind, uint64_t seed) {
  return std::string(sim::map_kind_name(kind)) + ":" + std::to_string(seed);
}

json read_manifest_info(const fs::path& stage_dir) {
  std::ifstream in(stage_dir / "manifest.json");
  if (!in) return json::object();
  return json::parse(in).value("info", json::object());
}

std::shared_ptr<const model::Model> load_model(const StageResult& s) {
  return std::make_shared<const model::Model>(model::Model::load(s.outputs.at(0).string()));
}

planner::RewardConfig reward_cfg(const ExperimentConfig& cfg, double alpha_bum, const sim::TerrainMap& map) {
  return {cfg.alpha_pos, alpha_bum, map.goal_region().center()};
}

}  // namespace

namespace {

std::map<std::string, PolicySummary> summarize_metrics(const std::vector<RunRecord>& runs,
                                                       const std::vector<RunMetrics>& metrics) {
  std::map<std::string, PolicySummary> out;
  std::map<std::string, std::vector<double>> bumps;
  std::map<std::string, double> steps_sum, fail_dist;
  for (size_t i = 0; i < runs.size(); ++i) {
    const RunRecord& r = runs[i];
    const RunMetrics& m = metrics[i];
    PolicySummary& s = out[r.policy];
    ++s.runs;
    bumps[r.policy].push_back(m.mean_bumpiness);
    s.entered_tall_grass += m.entered_tall_grass ? 1 : 0;
    switch (m.outcome) {
      case Outcome::kReachedGoal:
        ++s.reached;
        steps_sum[r.policy] += m.steps;
        if (!m.entered_tall_grass) ++s.trapped_or_detour;
        break;
      case Outcome::kCollided: ++s.collided; fail_dist[r.policy] += m.distance; break;
      case Outcome::kTrapped: ++s.trapped; ++s.trapped_or_detour; fail_dist[r.policy] += m.distance; break;
      case Outcome::kTimeout: ++s.timeout; fail_dist[r.policy] += m.distance; break;
    }
  }
  for (auto& [name, s] : out) {
    const auto& b = bumps[name];
    double mean = 0;
    for (double v : b) mean += v;
    mean /= static_cast<double>(b.size());
    double var = 0;
    for (double v : b) var += (v - mean) * (v - mean);
    s.mean_bumpiness = mean;
    s.sd_bumpiness = b.size() > 1 ? std::sqrt(var / static_cast<double>(b.size() - 1)) : 0.0;
    s.success_rate = static_cast<double>(s.reached) / static_cast<double>(s.runs);
    s.mean_steps_success = s.reached ? steps_sum[name] / s.reached : kNaN;
    const int fails = s.runs - s.reached;
    s.mean_distance_failure = fails ? fail_dist[name] / fails : kNaN;
  }
  return out;
}

}  // namespace

std::map<std::string, PolicySummary> summarize(const std::vector<RunRecord>& runs,
                                               const sim::TerrainMap& map) {
  std::vector<RunMetrics> metrics;
  for (const RunRecord& r : runs) metrics.push_back(compute_metrics(r, map));
  return summarize_metrics(runs, metrics);
}

SignTest sign_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sign_test: unpaired samples");
  SignTest t;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) ++t.wins;
    else if (a[i] > b[i]) ++t.losses;
    else ++t.ties;
  }
  const int n = t.wins + t.losses;
  // P(X >= wins), X ~ Binomial(n, 1/2), summed in log space.
  double p = 0.0;
  for (int k = t.wins; k <= n; ++k) {
    p += std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) -
                  n * std::log(2.0));
  }
  t.p_value = std::min(1.0, p);
  return t;
}

namespace {

std::vector<const RunRecord*> runs_of(const SuiteResult& s, const std::string& policy) {
  std::vector<const RunRecord*> out;
  for (const RunRecord& r : s.runs)
    if (r.policy == policy) out.push_back(&r);
  std::sort(out.begin(), out.end(), [](const RunRecord* a, const RunRecord* b) {
    return std::tie(a->map, a->start_index, a->trial) < std::tie(b->map, b->start_index, b->trial);
  });
  return out;
}

}  // namespace

std::vector<double> paired_bumpiness(const SuiteResult& s, const std::string& policy) {
  std::vector<double> out;
  for (const RunRecord* r : runs_of(s, policy)) {
    double b = 0;
    for (const auto& st : r->steps) b += st.gt_bumpiness;
    out.push_back(r->steps.empty() ? 0.0 : b / static_cast<double>(r->steps.size()));
  }
  return out;
}

std::vector<int> paired_success(const SuiteResult& s, const std::string& policy) {
  std::vector<int> out;
  for (const RunRecord* r : runs_of(s, policy)) out.push_back(r->outcome == Outcome::kReachedGoal);
  return out;
}

double steps_ratio(const SuiteResult& s, const std::string& a, const std::string& b) {
  const auto ra = runs_of(s, a), rb = runs_of(s, b);
  if (ra.size() != rb.size()) return kNaN;
  double sa = 0, sb = 0;
  int n = 0;
  for (size_t i = 0; i < ra.size(); ++i) {
    if (ra[i]->outcome != Outcome::kReachedGoal || rb[i]->outcome != Outcome::kReachedGoal) continue;
    sa += static_cast<double>(ra[i]->steps.size());
    sb += static_cast<double>(rb[i]->steps.size());
    ++n;
  }
  return n ? sb / sa : kNaN;
}

SuiteResult run_eval(const ExperimentConfig& cfg, const std::string& suite, const sim::TerrainMap& map,
                     const std::string& map_name,
                     const std::vector<std::pair<std::string, PolicyFactory>>& policies, int starts,
                     int trials, const fs::path& out_dir) {
  SuiteResult res;
  res.suite = suite;
  res.map_name = map_name;
  const RunConfig rc = cfg.run_config();
  const uint64_t map_hash = hash_string(map_name);
  const std::vector<Pose2> poses = sim::sample_starts(map, starts, derive_seed(cfg.seed, map_hash));
  for (const auto& [name, factory] : policies) {
    res.policy_order.push_back(name);
    for (int s = 0; s < static_cast<int>(poses.size()); ++s) {
      for (int t = 0; t < trials; ++t) {
        const uint64_t seed = derive_seed(cfg.seed ^ map_hash, 10000 + 100 * static_cast<uint64_t>(s) + t);
        std::unique_ptr<Policy> policy = factory();
        RunRecord r = run_episode(map, poses[static_cast<size_t>(s)], *policy, rc, seed);
        r.policy = name;
        r.map = map_name;
        r.start_index = s;
        r.trial = t;
        res.runs.push_back(std::move(r));
      }
    }
  }
  res.summary = summarize(res.runs, map);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream runs(out_dir / "runs.ndjson");
    for (const RunRecord& r : res.runs) write_run_ndjson(runs, r);
    write_table_csv(out_dir / "table.csv", res);
  }
  return res;
}

void write_table_csv(const fs::path& path, const SuiteResult& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_table_csv: cannot open " + path.string());
  out << "suite,map,policy,runs,reached,success_rate,collided,trapped,timeout,"
         "mean_bumpiness,sd_bumpiness,mean_steps_success,mean_distance_failure,"
         "entered_tall_grass,trapped_or_detour\n";
  out.precision(6);
  std::vector<std::string> order = s.policy_order;
  for (const auto& [name, _] : s.summary)
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  for (const std::string& name : order) {
    const PolicySummary& p = s.summary.at(name);
    out << s.suite << ',' << s.map_name << ',' << name << ',' << p.runs << ',' << p.reached << ','
        << p.success_rate << ',' << p.collided << ',' << p.trapped << ',' << p.timeout << ','
        << p.mean_bumpiness << ',' << p.sd_bumpiness << ',' << p.mean_steps_success << ','
        << p.mean_distance_failure << ',' << p.entered_tall_grass << ',' << p.trapped_or_detour
        << '\n';
  }
}

UrbanSuite urban_suite(Pipeline& p) {
  const ExperimentConfig& cfg = p.config();
  UrbanSuite u;
  u.model = p.run_training_pipeline("urban", cfg.urban);
  auto m = load_model(u.model);
  const sim::TerrainMap map = sim::make_map(sim::MapKind::kUrban, cfg.urban_eval_map);
  const auto rb = reward_cfg(cfg, cfg.alpha_bum_urban, map);
  const auto r0 = reward_cfg(cfg, 0.0, map);
  const Vec2 goal = map.goal_region().center();
  u.eval = run_eval(
      cfg, "urban", map, map_label(sim::MapKind::kUrban, cfg.urban_eval_map),
      {{"badgr", [&] { return make_learned_policy("badgr", m, rb, cfg.planner); }},
       {"badgr_nobump", [&] { return make_learned_policy("badgr_nobump", m, r0, cfg.planner); }},
       {"lidar", [&] { return std::make_unique<LidarPolicy>(goal, cfg.lidar_config(), cfg.sim.max_range); }},
       {"naive", [&] { return std::make_unique<NaivePolicy>(goal, cfg.naive); }}},
      cfg.eval.starts, cfg.eval.trials, p.root() / "eval" / "urban");
  const auto b = paired_bumpiness(u.eval, "badgr");
  u.bump_vs_nobump = sign_test(b, paired_bumpiness(u.eval, "badgr_nobump"));
  u.bump_vs_lidar = sign_test(b, paired_bumpiness(u.eval, "lidar"));
  return u;
}

SelfImprovement self_improvement(Pipeline& p) {
  const ExperimentConfig& cfg = p.config();
  SelfImprovement s;
  const StageResult urban_label = p.label("urban", p.collect("urban", cfg.urban));
  s.zero_shot = p.train("urban", {urban_label});
  const StageResult off_label = p.label("offroad", p.collect("offroad", cfg.offroad));
  s.target_only = p.train("offroad_only", {off_label});
  s.finetuned = p.train("finetuned", {urban_label, off_label}, s.zero_shot);
  s.target_only_records = read_manifest_info(p.root() / "offroad_only" / "train").value("records", uint64_t{0});
  s.finetuned_records = read_manifest_info(p.root() / "finetuned" / "train").value("records", uint64_t{0});

  const sim::TerrainMap map = sim::make_map(sim::MapKind::kOffRoad, cfg.offroad_eval_map);
  const auto rcfg = reward_cfg(cfg, cfg.alpha_bum_offroad, map);
  auto zero = load_model(s.zero_shot), target = load_model(s.target_only), fine = load_model(s.finetuned);
  s.eval = run_eval(cfg, "selfimprove", map, map_label(sim::MapKind::kOffRoad, cfg.offroad_eval_map),
                    {{"zero_shot", [&] { return make_learned_policy("zero_shot", zero, rcfg, cfg.planner); }},
                     {"target_only", [&] { return make_learned_policy("target_only", target, rcfg, cfg.planner); }},
                     {"finetuned", [&] { return make_learned_policy("finetuned", fine, rcfg, cfg.planner); }}},
                    cfg.eval.starts, cfg.eval.trials, p.root() / "eval" / "selfimprove");
  return s;
}

SuiteResult tallgrass_suite(Pipeline& p, const StageResult& model) {
  const ExperimentConfig& cfg = p.config();
  auto m = load_model(model);
  const sim::TerrainMap map = sim::make_map(sim::MapKind::kTallGrassCorridor, cfg.tallgrass_eval_map);
  const auto rcfg = reward_cfg(cfg, cfg.alpha_bum_offroad, map);
  const Vec2 goal = map.goal_region().center();
  return run_eval(
      cfg, "tallgrass", map, map_label(sim::MapKind::kTallGrassCorridor, cfg.tallgrass_eval_map),
      {{"badgr", [&] { return make_learned_policy("badgr", m, rcfg, cfg.planner); }},
       {"lidar", [&] { return std::make_unique<LidarPolicy>(goal, cfg.lidar_config(), cfg.sim.max_range); }}},
      cfg.eval.starts, cfg.eval.trials, p.root() / "eval" / "tallgrass");
}

SuiteResult generalization_suite(Pipeline& p, const StageResult& model) {
  const ExperimentConfig& cfg = p.config();
  auto m = load_model(model);
  SuiteResult all;
  all.suite = "generalization";
  all.map_name = "novel";
  all.policy_order = {"badgr"};
  std::vector<RunMetrics> metrics;
  for (uint64_t seed : cfg.novel_eval_maps) {
    const sim::TerrainMap map = sim::make_map(sim::MapKind::kNovelRandom, seed);
    const auto rcfg = reward_cfg(cfg, cfg.alpha_bum_offroad, map);
    SuiteResult r = run_eval(cfg, "generalization", map, map_label(sim::MapKind::kNovelRandom, seed),
                             {{"badgr", [&] { return make_learned_policy("badgr", m, rcfg, cfg.planner); }}},
                             cfg.eval.starts, cfg.novel_trials,
                             p.root() / "eval" / ("novel_" + std::to_string(seed)));
    for (RunRecord& run : r.runs) {
      metrics.push_back(compute_metrics(run, map));
      all.runs.push_back(std::move(run));
    }
  }
  all.summary = summarize_metrics(all.runs, metrics);
  return all;
}

SuiteResult oracle_suite(const ExperimentConfig& cfg, int maps, int starts, const fs::path& out_dir) {
  SuiteResult all;
  all.suite = "oracle";
  all.map_name = "urban";
  all.policy_order = {"oracle"};
  std::vector<RunMetrics> metrics;
  for (int i = 0; i < maps; ++i) {
    const uint64_t seed = 1000 + static_cast<uint64_t>(i);
    const sim::TerrainMap map = sim::make_map(sim::MapKind::kUrban, seed);
    const auto rcfg = reward_cfg(cfg, cfg.alpha_bum_urban, map);
    SuiteResult r = run_eval(
        cfg, "oracle", map, map_label(sim::MapKind::kUrban, seed),
        {{"oracle", [&] {
            return make_oracle_policy("oracle", map, cfg.sim, cfg.label.bump_threshold, rcfg, cfg.planner);
          }}},
        starts, 1, out_dir.empty() ? out_dir : out_dir / ("urban_" + std::to_string(seed)));
    for (RunRecord& run : r.runs) {
      metrics.push_back(compute_metrics(run, map));
      all.runs.push_back(std::move(run));
    }
  }
  all.summary = summarize_metrics(all.runs, metrics);
  return all;
}

OptimizerComparison compare_optimizers(const ExperimentConfig& cfg, int scenes) {
  OptimizerComparison c;
  c.scenes = scenes;
  for (int i = 0; i < scenes; ++i) {
    const uint64_t seed = derive_seed(cfg.seed, 0x0B7 + static_cast<uint64_t>(i));
    const sim::TerrainMap map = sim::make_map(sim::MapKind::kUrban, 2000 + static_cast<uint64_t>(i));
    const Pose2 start = sim::sample_starts(map, 1, seed).at(0);
    const auto rcfg = reward_cfg(cfg, cfg.alpha_bum_urban, map);
    OracleModel oracle(map, cfg.sim, cfg.planner.horizon, cfg.label.bump_threshold);
    Rng sim_rng(derive_seed(seed, 1)), plan_rng(derive_seed(seed, 2));
    sim::RobotState state = sim::make_state(start);
    sim::SensorFrame frame = sim::render_sensors(state, map, cfg.sim, sim_rng);
    planner::PlannerState ps = planner::make_planner_state(cfg.planner);
    // Warm up the running estimate with a short MPC run.
    const int warm = 6 + 4 * (i % 5);
    for (int k = 0; k < warm; ++k) {
      oracle.set_state(state);
      const planner::PlanResult r = planner::plan_step(frame, ps, oracle, rcfg, cfg.planner, plan_rng);
      const sim::StepOutcome out = sim::step(state, r.action, map, cfg.sim, sim_rng);
      if (out.gt_collision || map.goal_region().contains(out.next_state.x, out.next_state.y)) break;
      state = out.next_state;
      frame = out.frame;
    }
    oracle.set_state(state);
    ps.pose = frame.odom;
    const Vec2 local_goal = to_local(ps.pose, rcfg.goal.x, rcfg.goal.y);
    Rng rng_a(derive_seed(seed, 3)), rng_b(derive_seed(seed, 4));
    const auto mppi = planner::sample_sequences(ps, cfg.planner, rng_a);
    const auto rs = planner::random_shooting(cfg.planner, rng_b);
    const auto ra = planner::score(oracle.predict_batch(frame, mppi), rcfg, local_goal);
    const auto rb = planner::score(oracle.predict_batch(frame, rs), rcfg, local_goal);
    const double ba = *std::max_element(ra.begin(), ra.end());
    const double bb = *std::max_element(rb.begin(), rb.end());
    c.optimizer_best.push_back(ba);
    c.random_best.push_back(bb);
    if (ba >= bb) ++c.optimizer_at_least_as_good;
  }
  return c;
}

std::optional<Pose2> wall_probe_pose(const sim::TerrainMap& map, double distance) {
  const int k = static_cast<int>(std::lround(distance / map.cell_size()));
  for (int cy = 1; cy < map.height(); ++cy) {
    for (int cx = 2; cx + 2 < map.width(); ++cx) {
      if (map.cell(cx, cy).visual_class != sim::VisualClass::kWall) continue;
      if (cy - k < 0) continue;
      bool clear = true;
      for (int d = 1; d <= k && clear; ++d)
        for (int dx = -1; dx <= 1 && clear; ++dx) clear = !map.cell(cx + dx, cy - d).geometric_occupancy;
      if (!clear) continue;
      const Vec2 c = map.cell_center(cx, cy - k);
      return Pose2{c.x, c.y, kPi / 2};
    }
  }
  return std::nullopt;
}

}  // namespace badgr::harness
