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

#include "badgr/sim/map_io.h"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace badgr::sim {
namespace {

using nlohmann::json;

char canonical_char(VisualClass c) {
  switch (c) {
    case VisualClass::kFreeGround: return '.';
    case VisualClass::kConcrete: return 'C';
    case VisualClass::kGrass: return 'g';
    case VisualClass::kTallGrass: return 'G';
    case VisualClass::kGravel: return 'v';
    case VisualClass::kWall: return '#';
    case VisualClass::kTree: return 'T';
  }
  return '?';
}

json rect_json(const Rect& r) {
  return {{"x_min", r.x_min}, {"y_min", r.y_min}, {"x_max", r.x_max}, {"y_max", r.y_max}};
}

Rect rect_from(const json& j) {
  return {j.at("x_min").get<double>(), j.at("y_min").get<double>(),
          j.at("x_max").get<double>(), j.at("y_max").get<double>()};
}

}  // namespace

std::string map_to_string(const TerrainMap& map) {
  std::vector<std::pair<TerrainCell, char>> legend;
  const std::string pool = "0123456789abcdefhijklmnopqrstuwxyz";
  size_t next_pool = 0;
  auto char_for = [&](const TerrainCell& c) {
    for (const auto& [cell, ch] : legend)
      if (cell == c) return ch;
    char ch = c == make_cell(c.visual_class) ? canonical_char(c.visual_class) : pool.at(next_pool++);
    legend.emplace_back(c, ch);
    return ch;
  };

  json grid = json::array();
  for (int cy = map.height() - 1; cy >= 0; --cy) {
    std::string row(static_cast<size_t>(map.width()), ' ');
    for (int cx = 0; cx < map.width(); ++cx) row[cx] = char_for(map.cell(cx, cy));
    grid.push_back(row);
  }
  json leg = json::object();
  for (const auto& [cell, ch] : legend) {
    leg[std::string(1, ch)] = {{"class", std::string(class_name(cell.visual_class))},
                               {"occupied", cell.geometric_occupancy},
                               {"traversable", cell.physically_traversable},
                               {"bumpiness", cell.bumpiness_coeff}};
  }
  json doc = {{"format", "badgr-map"},
              {"version", 1},
              {"cell_size", map.cell_size()},
              {"width", map.width()},
              {"height", map.height()},
              {"spawn_region", rect_json(map.spawn_region())},
              {"goal_region", rect_json(map.goal_region())},
              {"legend", leg},
              {"grid", grid}};
  return doc.dump(1);
}

TerrainMap map_from_string(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.value("format", "") != "badgr-map") throw std::runtime_error("not a badgr-map document");
  if (doc.value("version", 0) != 1) throw std::runtime_error("unsupported map version");
  const int w = doc.at("width").get<int>();
  const int h = doc.at("height").get<int>();
  TerrainMap map(w, h, doc.at("cell_size").get<double>());
  std::map<char, TerrainCell> legend;
  for (const auto& [key, v] : doc.at("legend").items()) {
    if (key.size() != 1) throw std::runtime_error("legend keys must be single characters");
    const auto cls = class_from_name(v.at("class").get<std::string>());
    if (!cls) throw std::runtime_error("unknown class in legend: " + v.at("class").dump());
    TerrainCell cell{*cls, v.at("occupied").get<bool>(), v.at("traversable").get<bool>(),
                     v.at("bumpiness").get<double>()};
    validate_cell(cell);
    legend[key[0]] = cell;
  }
  const json& grid = doc.at("grid");
  if (static_cast<int>(grid.size()) != h) throw std::runtime_error("grid has wrong row count");
  for (int r = 0; r < h; ++r) {
    const std::string row = grid[r].get<std::string>();
    if (static_cast<int>(row.size()) != w) throw std::runtime_error("grid row has wrong width");
    const int cy = h - 1 - r;
    for (int cx = 0; cx < w; ++cx) {
      auto it = legend.find(row[cx]);
      if (it == legend.end()) throw std::runtime_error(std::string("grid char not in legend: ") + row[cx]);
      map.set(cx, cy, it->second);
    }
  }
  map.set_spawn_region(rect_from(doc.at("spawn_region")));
  map.set_goal_region(rect_from(doc.at("goal_region")));
  return map;
}

void save_map(const TerrainMap& map, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << map_to_string(map) << "\n";
}

TerrainMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return map_from_string(ss.str());
}

}  // namespace badgr::sim
