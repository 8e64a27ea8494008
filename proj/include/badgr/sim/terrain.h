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

#ifndef BADGR_SIM_TERRAIN_H_
#define BADGR_SIM_TERRAIN_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "badgr/common/geometry.h"

namespace badgr::sim {

enum class VisualClass : uint8_t {
  kFreeGround = 0,
  kConcrete,
  kGrass,
  kTallGrass,
  kGravel,
  kWall,
  kTree,
};
inline constexpr int kNumVisualClasses = 7;

std::string_view class_name(VisualClass c);
std::optional<VisualClass> class_from_name(std::string_view name);

// A grid cell. Geometry (what the range sensor sees) is deliberately separate
// from physics (whether the robot can drive through it and how rough it is).
struct TerrainCell {
  VisualClass visual_class = VisualClass::kFreeGround;
  bool geometric_occupancy = false;
  bool physically_traversable = true;
  double bumpiness_coeff = 0.0;  // [0, 1]

  friend bool operator==(const TerrainCell&, const TerrainCell&) = default;
};

// Canonical properties for each visual class.
TerrainCell make_cell(VisualClass c);

// Throws std::invalid_argument if the cell breaks a class invariant.
void validate_cell(const TerrainCell& cell);

// Axis-aligned rectangle in world meters.
struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
  Vec2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

struct CellIndex {
  int cx = 0;
  int cy = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

class TerrainMap {
 public:
  TerrainMap() = default;
  TerrainMap(int width, int height, double cell_size,
             TerrainCell fill = make_cell(VisualClass::kFreeGround));

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  double world_width() const { return width_ * cell_size_; }
  double world_height() const { return height_ * cell_size_; }

  bool in_bounds(int cx, int cy) const {
    return cx >= 0 && cy >= 0 && cx < width_ && cy < height_;
  }
  // Out-of-bounds cells read as Wall.
  const TerrainCell& cell(int cx, int cy) const;
  const TerrainCell& cell_at(double x, double y) const;
  CellIndex index_of(double x, double y) const;
  Vec2 cell_center(int cx, int cy) const;

  void set(int cx, int cy, const TerrainCell& cell);
  // Fills every cell whose center lies inside `r`.
  void fill_rect(const Rect& r, const TerrainCell& cell);

  const Rect& spawn_region() const { return spawn_; }
  const Rect& goal_region() const { return goal_; }
  void set_spawn_region(const Rect& r) { spawn_ = r; }
  void set_goal_region(const Rect& r) { goal_ = r; }

  const std::vector<TerrainCell>& cells() const { return cells_; }

  friend bool operator==(const TerrainMap&, const TerrainMap&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  double cell_size_ = 0.5;
  std::vector<TerrainCell> cells_;  // row-major, row 0 at y = 0
  Rect spawn_;
  Rect goal_;
};

// Mean bumpiness over all physically traversable cells.
double mean_traversable_bumpiness(const TerrainMap& map);

}  // namespace badgr::sim

#endif  // BADGR_SIM_TERRAIN_H_
