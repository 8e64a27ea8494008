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

#include "badgr/harness/report.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "badgr/common/rng.h"

namespace badgr::harness {

namespace fs = std::filesystem;

namespace {

constexpr double kPx = 12.0;  // pixels per meter

constexpr std::array<const char*, sim::kNumVisualClasses> kClassColor = {
    "#e8e4d8",  // free ground
    "#bdbdbd",  // concrete
    "#9ccc65",  // grass
    "#2e7d32",  // tall grass
    "#a1887f",  // gravel
    "#37474f",  // wall
    "#5d4037",  // tree
};

constexpr std::array<const char*, 6> kPolicyColor = {"#d32f2f", "#1976d2", "#f57c00",
                                                     "#7b1fa2", "#00897b", "#fbc02d"};

struct Canvas {
  const sim::TerrainMap& map;
  double px(double x) const { return x * kPx; }
  double py(double y) const { return (map.world_height() - y) * kPx; }
};

// With `zoom` > 0 the view is a square of that many meters around `center`.
void draw_map(std::ostringstream& out, const Canvas& c, Vec2 center = {}, double zoom = 0.0) {
  const sim::TerrainMap& m = c.map;
  const double s = m.cell_size() * kPx;
  if (zoom > 0) {
    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
        "viewBox=\"{:.1f} {:.1f} {:.1f} {:.1f}\">\n",
        c.px(center.x - zoom / 2), c.py(center.y + zoom / 2), zoom * kPx, zoom * kPx);
  } else {
    out << fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\">\n",
        m.world_width() * kPx, m.world_height() * kPx);
  }
  for (int cy = 0; cy < m.height(); ++cy) {
    for (int cx = 0; cx < m.width(); ++cx) {
      const auto cls = static_cast<size_t>(m.cell(cx, cy).visual_class);
      out << fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"{}\"/>\n",
                         cx * s, c.py((cy + 1) * m.cell_size()), s, s, kClassColor[cls]);
    }
  }
  for (const auto& [r, color] : {std::pair{m.spawn_region(), "#1976d2"}, std::pair{m.goal_region(), "#388e3c"}}) {
    out << fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
        "stroke=\"{}\" stroke-width=\"2\"/>\n",
        c.px(r.x_min), c.py(r.y_max), (r.x_max - r.x_min) * kPx, (r.y_max - r.y_min) * kPx, color);
  }
}

void polyline(std::ostringstream& out, const Canvas& c, const std::vector<Vec2>& pts, const std::string& color,
              double width, double opacity) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
      << "\" stroke-opacity=\"" << fmt::format("{:.2f}", opacity) << "\" points=\"";
  for (const Vec2& p : pts) out << fmt::format("{:.1f},{:.1f} ", c.px(p.x), c.py(p.y));
  out << "\"/>\n";
}

Vec2 to_world(const Pose2& o, const Vec2& local) {
  const double c = std::cos(o.heading), s = std::sin(o.heading);
  return {o.x + c * local.x - s * local.y, o.y + s * local.x + c * local.y};
}

std::string num(double v, int prec = 3) {
  return std::isnan(v) ? std::string("-") : fmt::format("{:.{}f}", v, prec);
}

// "urban:0" -> map
sim::TerrainMap map_from_label(const std::string& label) {
  const auto colon = label.find(':');
  if (colon == std::string::npos) throw std::runtime_error("bad map label: " + label);
  const auto kind = sim::map_kind_from_name(label.substr(0, colon));
  if (!kind) throw std::runtime_error("bad map label: " + label);
  return sim::make_map(*kind, std::stoull(label.substr(colon + 1)));
}

}  // namespace

std::string trajectory_svg(const sim::TerrainMap& map, const std::vector<RunRecord>& runs,
                           const std::vector<std::string>& policy_order) {
  std::ostringstream out;
  const Canvas c{map};
  draw_map(out, c);
  for (const RunRecord& r : runs) {
    const auto it = std::find(policy_order.begin(), policy_order.end(), r.policy);
    const size_t idx = static_cast<size_t>(it - policy_order.begin()) % kPolicyColor.size();
    std::vector<Vec2> pts{{r.start.x, r.start.y}};
    for (const TrajectoryStep& s : r.steps) pts.push_back({s.pose.x, s.pose.y});
    polyline(out, c, pts, kPolicyColor[idx], 1.5, 0.6);
    if (r.outcome == Outcome::kCollided && !pts.empty()) {
      out << fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"4\" fill=\"black\"/>\n", c.px(pts.back().x),
                         c.py(pts.back().y));
    }
  }
  for (size_t i = 0; i < policy_order.size(); ++i) {
    out << fmt::format("<text x=\"6\" y=\"{}\" font-size=\"12\" fill=\"{}\">{}</text>\n", 16 + 14 * i,
                       kPolicyColor[i % kPolicyColor.size()], policy_order[i]);
  }
  out << "</svg>\n";
  return out.str();
}

std::string candidate_fan_svg(const sim::TerrainMap& map, const Pose2& pose,
                              const planner::PlanDiagnostics& diag) {
  std::ostringstream out;
  const Canvas c{map};
  draw_map(out, c, {pose.x, pose.y}, 6.0);
  auto path = [&](const model::EventPrediction& p) {
    std::vector<Vec2> pts{{pose.x, pose.y}};
    for (const Vec2& q : p.pos) pts.push_back(to_world(pose, q));
    return pts;
  };
  for (const auto& p : diag.predictions) {
    const double pc = p.p_coll.empty() ? 0.0 : *std::max_element(p.p_coll.begin(), p.p_coll.end());
    const int red = static_cast<int>(std::lround(255 * pc));
    polyline(out, c, path(p), fmt::format("#{:02x}{:02x}40", red, 255 - red), 0.4, 0.5);
  }
  if (!diag.chosen.pos.empty()) polyline(out, c, path(diag.chosen), "#1565c0", 1.2, 1.0);
  out << "</svg>\n";
  return out.str();
}

CandidateFan candidate_fan(const sim::TerrainMap& map, const Pose2& pose, planner::PredictiveModel& model,
                           const planner::RewardConfig& rcfg, const planner::PlannerConfig& pcfg,
                           const sim::SimConfig& sim_cfg, uint64_t seed) {
  Rng rng(seed);
  sim::RobotState state = sim::make_state(pose);
  const sim::SensorFrame frame = sim::render_sensors(state, map, sim_cfg, rng);
  planner::PlannerState ps = planner::make_planner_state(pcfg);
  CandidateFan fan;
  fan.diag = planner::plan_step(frame, ps, model, rcfg, pcfg, rng).diag;
  for (const auto& p : fan.diag.predictions)
    if (std::any_of(p.p_coll.begin(), p.p_coll.end(), [](double c) { return c > 0.5; })) ++fan.likely_collisions;
  fan.svg = candidate_fan_svg(map, pose, fan.diag);
  return fan;
}

std::string format_table(const SuiteResult& s) {
  std::string out = fmt::format("{} on {}\n", s.suite, s.map_name);
  out += fmt::format("{:<14} {:>5} {:>8} {:>5} {:>5} {:>5} {:>14} {:>8} {:>8}\n", "policy", "runs", "success",
                     "coll", "trap", "tout", "bumpiness", "steps", "tg_enter");
  std::vector<std::string> order = s.policy_order;
  for (const auto& [name, _] : s.summary)
    if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
  for (const std::string& name : order) {
    const auto it = s.summary.find(name);
    if (it == s.summary.end()) continue;
    const PolicySummary& p = it->second;
    out += fmt::format("{:<14} {:>5} {:>7.0f}% {:>5} {:>5} {:>5} {:>6}+-{:<6} {:>8} {:>8}\n", name, p.runs,
                       100.0 * p.success_rate, p.collided, p.trapped, p.timeout, num(p.mean_bumpiness),
                       num(p.sd_bumpiness), num(p.mean_steps_success, 1), p.entered_tall_grass);
  }
  return out;
}

std::string write_report(const fs::path& root, const ExperimentConfig& cfg) {
  const fs::path eval = root / "eval";
  if (!fs::is_directory(eval)) throw std::runtime_error("no eval results under " + root.string());
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(eval))
    if (fs::exists(e.path() / "runs.ndjson")) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  std::string all;
  for (const fs::path& d : dirs) {
    std::ifstream in(d / "runs.ndjson");
    std::vector<RunRecord> runs = read_runs_ndjson(in);
    if (runs.empty()) continue;
    SuiteResult s;
    s.suite = d.filename().string();
    s.map_name = runs.front().map;
    for (const RunRecord& r : runs)
      if (std::find(s.policy_order.begin(), s.policy_order.end(), r.policy) == s.policy_order.end())
        s.policy_order.push_back(r.policy);
    const sim::TerrainMap map = map_from_label(s.map_name);
    s.summary = summarize(runs, map);
    s.runs = std::move(runs);
    const std::string table = format_table(s);
    std::ofstream(d / "table.txt") << table;
    std::ofstream(d / "trajectories.svg") << trajectory_svg(map, s.runs, s.policy_order);
    all += table + "\n";
  }
  const fs::path ckpt = root / "urban" / "train" / "model.ckpt";
  if (fs::exists(ckpt)) {
    const sim::TerrainMap map = sim::make_map(sim::MapKind::kUrban, cfg.urban_eval_map);
    if (const auto probe = wall_probe_pose(map, 0.75)) {
      const model::Model m = model::Model::load(ckpt.string());
      planner::LearnedModel lm(m);
      const planner::RewardConfig rcfg{cfg.alpha_pos, cfg.alpha_bum_urban, map.goal_region().center()};
      const CandidateFan fan = candidate_fan(map, *probe, lm, rcfg, cfg.planner, cfg.sim, cfg.seed);
      std::ofstream(eval / "wall_probe_candidates.svg") << fan.svg;
      all += fmt::format("wall probe: {} of {} candidates predict a collision\n", fan.likely_collisions,
                         fan.diag.predictions.size());
    }
  }
  std::ofstream(root / "report.txt") << all;
  return all;
}

}  // namespace badgr::harness
