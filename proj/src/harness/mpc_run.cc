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

#include "badgr/harness/mpc_run.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace badgr::harness {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::kReachedGoal: return "ReachedGoal";
    case Outcome::kCollided: return "Collided";
    case Outcome::kTrapped: return "Trapped";
    case Outcome::kTimeout: return "Timeout";
  }
  return "Timeout";
}

Outcome outcome_from_name(const std::string& s) {
  for (Outcome o : {Outcome::kReachedGoal, Outcome::kCollided, Outcome::kTrapped, Outcome::kTimeout}) {
    if (outcome_name(o) == s) return o;
  }
  throw std::invalid_argument("unknown outcome " + s);
}

RunMetrics compute_metrics(const RunRecord& run, const sim::TerrainMap& map) {
  RunMetrics m;
  m.outcome = run.outcome;
  m.steps = static_cast<int>(run.steps.size());
  std::set<std::pair<int, int>> cells;
  const sim::CellIndex c0 = map.index_of(run.start.x, run.start.y);
  cells.insert({c0.cx, c0.cy});
  Pose2 prev = run.start;
  double bump = 0.0;
  for (const TrajectoryStep& s : run.steps) {
    bump += s.gt_bumpiness;
    m.distance += std::hypot(s.pose.x - prev.x, s.pose.y - prev.y);
    prev = s.pose;
    const sim::CellIndex c = map.index_of(s.pose.x, s.pose.y);
    cells.insert({c.cx, c.cy});
    if (s.terrain == sim::class_name(sim::VisualClass::kTallGrass)) m.entered_tall_grass = true;
  }
  m.mean_bumpiness = run.steps.empty() ? 0.0 : bump / static_cast<double>(run.steps.size());
  m.cells_visited = cells.size();
  return m;
}

RunRecord run_episode(const sim::TerrainMap& map, const Pose2& start, Policy& policy,
                      const RunConfig& cfg, uint64_t seed) {
  RunRecord run;
  run.policy = policy.name();
  run.seed = seed;
  run.start = start;
  policy.reset();
  Rng sim_rng(derive_seed(seed, 1));
  Rng policy_rng(derive_seed(seed, 2));
  sim::RobotState state = sim::make_state(start);
  sim::SensorFrame frame = sim::render_sensors(state, map, cfg.sim, sim_rng);
  if (map.goal_region().contains(state.x, state.y)) {
    run.outcome = Outcome::kReachedGoal;
    return run;
  }
  std::vector<Vec2> history{{state.x, state.y}};
  run.outcome = Outcome::kTimeout;
  for (int t = 0; t < cfg.max_steps; ++t) {
    const Action a = policy.act(frame, state, policy_rng);
    const sim::StepOutcome out = sim::step(state, a, map, cfg.sim, sim_rng);
    state = out.next_state;
    frame = out.frame;
    TrajectoryStep rec;
    rec.step = t + 1;
    rec.pose = state.pose();
    rec.odom = state.odom_pose();
    rec.action = sim::clamp_action(a, cfg.sim);
    rec.gt_collision = out.gt_collision;
    rec.gt_bumpiness = out.gt_bumpiness_sample;
    rec.terrain = std::string(sim::class_name(map.cell_at(state.x, state.y).visual_class));
    if (cfg.record_info) rec.info = policy.last_info();
    run.steps.push_back(std::move(rec));
    history.push_back({state.x, state.y});
    if (out.gt_collision) {
      run.outcome = Outcome::kCollided;
      break;
    }
    if (map.goal_region().contains(state.x, state.y)) {
      run.outcome = Outcome::kReachedGoal;
      break;
    }
    if (cfg.trap_steps > 0 && static_cast<int>(history.size()) > cfg.trap_steps) {
      const Vec2& old = history[history.size() - 1 - static_cast<size_t>(cfg.trap_steps)];
      if (std::hypot(state.x - old.x, state.y - old.y) < cfg.trap_distance) {
        run.outcome = Outcome::kTrapped;
        break;
      }
    }
  }
  return run;
}

RunRecord mpc_run(const sim::TerrainMap& map, const Pose2& start, planner::PredictiveModel& model,
                  const planner::RewardConfig& rcfg, const planner::PlannerConfig& pcfg,
                  const RunConfig& cfg, uint64_t seed, OracleModel* oracle) {
  BadgrPolicy policy(oracle ? "oracle" : "badgr", model, rcfg, pcfg, oracle);
  return run_episode(map, start, policy, cfg, seed);
}

namespace {

nlohmann::json pose_json(const Pose2& p) { return {p.x, p.y, p.heading}; }
Pose2 pose_from(const nlohmann::json& j) { return {j.at(0), j.at(1), j.at(2)}; }

}  // namespace

void write_run_ndjson(std::ostream& out, const RunRecord& run) {
  nlohmann::json head = {{"type", "run"},          {"policy", run.policy},
                         {"map", run.map},          {"start_index", run.start_index},
                         {"trial", run.trial},      {"seed", run.seed},
                         {"start", pose_json(run.start)}, {"outcome", outcome_name(run.outcome)},
                         {"num_steps", run.steps.size()}};
  out << head.dump() << '\n';
  for (const TrajectoryStep& s : run.steps) {
    nlohmann::json j = {{"type", "step"},
                        {"step", s.step},
                        {"pose", pose_json(s.pose)},
                        {"odom", pose_json(s.odom)},
                        {"action", {s.action.v, s.action.w}},
                        {"gt_collision", s.gt_collision},
                        {"gt_bumpiness", s.gt_bumpiness},
                        {"terrain", s.terrain}};
    if (!s.info.is_null() && !s.info.empty()) j["info"] = s.info;
    out << j.dump() << '\n';
  }
}

std::vector<RunRecord> read_runs_ndjson(std::istream& in) {
  std::vector<RunRecord> runs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    const std::string type = j.at("type");
    if (type == "run") {
      RunRecord r;
      r.policy = j.at("policy");
      r.map = j.at("map");
      r.start_index = j.at("start_index");
      r.trial = j.at("trial");
      r.seed = j.at("seed");
      r.start = pose_from(j.at("start"));
      r.outcome = outcome_from_name(j.at("outcome"));
      runs.push_back(std::move(r));
    } else if (type == "step") {
      if (runs.empty()) throw std::runtime_error("read_runs_ndjson: step before run header");
      TrajectoryStep s;
      s.step = j.at("step");
      s.pose = pose_from(j.at("pose"));
      s.odom = pose_from(j.at("odom"));
      s.action = {j.at("action").at(0), j.at("action").at(1)};
      s.gt_collision = j.at("gt_collision");
      s.gt_bumpiness = j.at("gt_bumpiness");
      s.terrain = j.at("terrain");
      s.info = j.value("info", nlohmann::json::object());
      runs.back().steps.push_back(std::move(s));
    } else {
      throw std::runtime_error("read_runs_ndjson: unknown record type " + type);
    }
  }
  return runs;
}

}  // namespace badgr::harness
