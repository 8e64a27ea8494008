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

#include "badgr/harness/config.h"

#include <cstdlib>
#include <fstream>
#include <set>

#include "badgr/common/hash.h"

namespace badgr::harness {
namespace {

using nlohmann::json;

// Reads the keys of one section, rejecting any it does not know.
class Section {
 public:
  Section(const json& j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object()) throw ConfigError("config section '" + name_ + "' must be an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions()) return;
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError("unknown config key '" + name_ + "." + k + "'");
    }
  }
  template <typename T>
  void get(const char* key, T& field) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      field = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + name_ + "." + key + "': " + e.what());
    }
  }
  const json* sub(const char* key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

 private:
  const json& j_;
  std::string name_;
  std::set<std::string> seen_;
};

json domain_json(const DomainConfig& d) {
  return {{"kind", sim::map_kind_name(d.kind)},
          {"map_seeds", d.map_seeds},
          {"steps", d.steps},
          {"detector", collector::detector_name(d.detector)}};
}

void domain_from(const json& j, const std::string& name, DomainConfig& d) {
  Section s(j, name);
  std::string kind(sim::map_kind_name(d.kind));
  std::string det(collector::detector_name(d.detector));
  s.get("kind", kind);
  s.get("map_seeds", d.map_seeds);
  s.get("steps", d.steps);
  s.get("detector", det);
  auto k = sim::map_kind_from_name(kind);
  if (!k) throw ConfigError("unknown map kind '" + kind + "' in " + name);
  d.kind = *k;
  auto m = collector::detector_from_name(det);
  if (!m) throw ConfigError("unknown detector '" + det + "' in " + name);
  d.detector = *m;
}

}  // namespace

RunConfig ExperimentConfig::run_config() const {
  RunConfig rc;
  rc.sim = sim;
  rc.max_steps = eval.max_steps;
  rc.trap_steps = eval.trap_steps;
  rc.trap_distance = eval.trap_distance;
  return rc;
}

baselines::GeometricPlannerConfig ExperimentConfig::lidar_config() const {
  return {lidar_clearance, sim.dt, planner};
}

collector::CollectConfig ExperimentConfig::collect_config() const {
  collector::CollectConfig c = collect;
  c.sim = sim;
  return c;
}

json ExperimentConfig::to_json() const {
  const auto& c = collect;
  return {
      {"seed", seed},
      {"sim",
       {{"dt", sim.dt},
        {"v_max", sim.v_max},
        {"w_max", sim.w_max},
        {"cam_fov_deg", sim.cam_fov_deg},
        {"cam_rays", sim.cam_rays},
        {"ground_lookaheads", sim.ground_lookaheads},
        {"range_rays", sim.range_rays},
        {"max_range", sim.max_range},
        {"min_range", sim.min_range},
        {"range_noise_sigma", sim.range_noise_sigma},
        {"bump_gain", sim.bump_gain},
        {"odom_sigma_pos", sim.odom_sigma_pos},
        {"odom_sigma_heading", sim.odom_sigma_heading}}},
      {"collect",
       {{"correlation", c.correlation},
        {"v_min", c.v_min},
        {"v_max", c.v_max},
        {"w_max", c.w_max},
        {"d_near", c.detector.d_near},
        {"v_cmd_min", c.detector.v_cmd_min},
        {"v_stuck", c.detector.v_stuck},
        {"back_steps", c.reset.back_steps},
        {"back_speed", c.reset.back_speed},
        {"min_turn", c.reset.min_turn},
        {"max_turn", c.reset.max_turn},
        {"max_attempts", c.reset.max_attempts},
        {"relocation_clearance", c.reset.relocation_clearance}}},
      {"label", {{"bump_threshold", label.bump_threshold}}},
      {"train", train.to_json()},
      {"planner",
       {{"num_samples", planner.num_samples},
        {"horizon", planner.horizon},
        {"sigma_v", planner.sigma_v},
        {"sigma_w", planner.sigma_w},
        {"beta", planner.beta},
        {"gamma", planner.gamma},
        {"v_min", planner.bounds.v_min},
        {"v_max", planner.bounds.v_max},
        {"w_min", planner.bounds.w_min},
        {"w_max", planner.bounds.w_max}}},
      {"reward",
       {{"alpha_pos", alpha_pos},
        {"alpha_bum_urban", alpha_bum_urban},
        {"alpha_bum_offroad", alpha_bum_offroad}}},
      {"lidar", {{"clearance", lidar_clearance}}},
      {"naive", {{"v_nom", naive.v_nom}, {"k_p", naive.k_p}, {"w_max", naive.w_max}}},
      {"eval",
       {{"starts", eval.starts},
        {"trials", eval.trials},
        {"max_steps", eval.max_steps},
        {"trap_steps", eval.trap_steps},
        {"trap_distance", eval.trap_distance}}},
      {"domains", {{"urban", domain_json(urban)}, {"offroad", domain_json(offroad)}}},
      {"maps",
       {{"urban_eval", urban_eval_map},
        {"offroad_eval", offroad_eval_map},
        {"tallgrass_eval", tallgrass_eval_map},
        {"novel_eval", novel_eval_maps},
        {"novel_trials", novel_trials}}},
  };
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c = default_config();
  Section root(j, "config");
  root.get("seed", c.seed);
  if (const json* s = root.sub("sim")) {
    Section x(*s, "sim");
    x.get("dt", c.sim.dt);
    x.get("v_max", c.sim.v_max);
    x.get("w_max", c.sim.w_max);
    x.get("cam_fov_deg", c.sim.cam_fov_deg);
    x.get("cam_rays", c.sim.cam_rays);
    x.get("ground_lookaheads", c.sim.ground_lookaheads);
    x.get("range_rays", c.sim.range_rays);
    x.get("max_range", c.sim.max_range);
    x.get("min_range", c.sim.min_range);
    x.get("range_noise_sigma", c.sim.range_noise_sigma);
    x.get("bump_gain", c.sim.bump_gain);
    x.get("odom_sigma_pos", c.sim.odom_sigma_pos);
    x.get("odom_sigma_heading", c.sim.odom_sigma_heading);
  }
  if (const json* s = root.sub("collect")) {
    Section x(*s, "collect");
    auto& k = c.collect;
    x.get("correlation", k.correlation);
    x.get("v_min", k.v_min);
    x.get("v_max", k.v_max);
    x.get("w_max", k.w_max);
    x.get("d_near", k.detector.d_near);
    x.get("v_cmd_min", k.detector.v_cmd_min);
    x.get("v_stuck", k.detector.v_stuck);
    x.get("back_steps", k.reset.back_steps);
    x.get("back_speed", k.reset.back_speed);
    x.get("min_turn", k.reset.min_turn);
    x.get("max_turn", k.reset.max_turn);
    x.get("max_attempts", k.reset.max_attempts);
    x.get("relocation_clearance", k.reset.relocation_clearance);
  }
  if (const json* s = root.sub("label")) {
    Section x(*s, "label");
    x.get("bump_threshold", c.label.bump_threshold);
  }
  if (const json* s = root.sub("train")) {
    json merged = c.train.to_json();
    for (const auto& [k, v] : s->items()) {
      if (!merged.contains(k)) throw ConfigError("unknown config key 'train." + k + "'");
      if (k == "model") {
        for (const auto& [mk, mv] : v.items()) {
          if (!merged["model"].contains(mk)) throw ConfigError("unknown config key 'train.model." + mk + "'");
          merged["model"][mk] = mv;
        }
      } else {
        merged[k] = v;
      }
    }
    c.train = model::TrainConfig::from_json(merged);
  }
  if (const json* s = root.sub("planner")) {
    Section x(*s, "planner");
    x.get("num_samples", c.planner.num_samples);
    x.get("horizon", c.planner.horizon);
    x.get("sigma_v", c.planner.sigma_v);
    x.get("sigma_w", c.planner.sigma_w);
    x.get("beta", c.planner.beta);
    x.get("gamma", c.planner.gamma);
    x.get("v_min", c.planner.bounds.v_min);
    x.get("v_max", c.planner.bounds.v_max);
    x.get("w_min", c.planner.bounds.w_min);
    x.get("w_max", c.planner.bounds.w_max);
  }
  if (const json* s = root.sub("reward")) {
    Section x(*s, "reward");
    x.get("alpha_pos", c.alpha_pos);
    x.get("alpha_bum_urban", c.alpha_bum_urban);
    x.get("alpha_bum_offroad", c.alpha_bum_offroad);
  }
  if (const json* s = root.sub("lidar")) {
    Section x(*s, "lidar");
    x.get("clearance", c.lidar_clearance);
  }
  if (const json* s = root.sub("naive")) {
    Section x(*s, "naive");
    x.get("v_nom", c.naive.v_nom);
    x.get("k_p", c.naive.k_p);
    x.get("w_max", c.naive.w_max);
  }
  if (const json* s = root.sub("eval")) {
    Section x(*s, "eval");
    x.get("starts", c.eval.starts);
    x.get("trials", c.eval.trials);
    x.get("max_steps", c.eval.max_steps);
    x.get("trap_steps", c.eval.trap_steps);
    x.get("trap_distance", c.eval.trap_distance);
  }
  if (const json* s = root.sub("domains")) {
    Section x(*s, "domains");
    if (const json* d = x.sub("urban")) domain_from(*d, "domains.urban", c.urban);
    if (const json* d = x.sub("offroad")) domain_from(*d, "domains.offroad", c.offroad);
  }
  if (const json* s = root.sub("maps")) {
    Section x(*s, "maps");
    x.get("urban_eval", c.urban_eval_map);
    x.get("offroad_eval", c.offroad_eval_map);
    x.get("tallgrass_eval", c.tallgrass_eval_map);
    x.get("novel_eval", c.novel_eval_maps);
    x.get("novel_trials", c.novel_trials);
  }
  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  if (train.model.horizon != planner.horizon) {
    throw ConfigError("train.model.horizon (" + std::to_string(train.model.horizon) +
                      ") must equal planner.horizon (" + std::to_string(planner.horizon) + ")");
  }
  if (train.model.cam_rays != sim.cam_rays || train.model.ground_samples != sim.ground_samples()) {
    throw ConfigError("train.model camera layout must match sim.cam_rays and sim.ground_lookaheads");
  }
  if (eval.starts < 1 || eval.trials < 1 || eval.max_steps < 1) {
    throw ConfigError("eval.starts, eval.trials and eval.max_steps must be >= 1");
  }
  if (!(lidar_clearance > 0)) throw ConfigError("lidar.clearance must be > 0");
  if (!(label.bump_threshold > 0)) throw ConfigError("label.bump_threshold must be > 0");
  try {
    planner.validate();
    planner::RewardConfig{alpha_pos, alpha_bum_urban, {}}.validate();
    planner::RewardConfig{alpha_pos, alpha_bum_offroad, {}}.validate();
    train.model.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.planner.bounds = {0.75, 0.75, -1.5, 1.5};
  c.planner.sigma_w = 0.6;
  c.naive = {0.75, 2.0, 1.5};
  c.urban = {sim::MapKind::kUrban, {0, 1, 2, 3, 4, 5}, 60000, collector::DetectorMode::kRangeBased};
  c.offroad = {sim::MapKind::kOffRoad, {0, 1, 2, 3}, 20000, collector::DetectorMode::kInertialBased};
  c.urban_eval_map = 0;
  c.offroad_eval_map = 0;
  c.tallgrass_eval_map = 0;
  c.novel_eval_maps = {500, 501, 502};
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return ExperimentConfig::from_json(j);
}

uint64_t config_hash(const json& j) { return hash_string(j.dump()); }

std::filesystem::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("BADGR_OUT_ROOT"); env && *env) return env;
  return "badgr_out";
}

}  // namespace badgr::harness
