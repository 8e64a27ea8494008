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

#include "badgr/sim/terrain.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace badgr::sim {
namespace {

constexpr std::array<std::string_view, kNumVisualClasses> kClassNames = {
    "FreeGround", "Concrete", "Grass", "TallGrass", "Gravel", "Wall", "Tree"};

const TerrainCell kOutOfBounds = make_cell(VisualClass::kWall);

}  // namespace

std::string_view class_name(VisualClass c) {
  return kClassNames.at(static_cast<size_t>(c));
}

std::optional<VisualClass> class_from_name(std::string_view name) {
  for (size_t i = 0; i < kClassNames.size(); ++i) {
    if (kClassNames[i] == name) return static_cast<VisualClass>(i);
  }
  return std::nullopt;
}

TerrainCell make_cell(VisualClass c) {
  switch (c) {
    case VisualClass::kFreeGround:
      return {c, false, true, 0.3};
    case VisualClass::kConcrete:
      return {c, false, true, 0.2};
    case VisualClass::kGrass:
      return {c, false, true, 0.6};
    case VisualClass::kTallGrass:
      // Blocks the range sensor and the camera, yet the robot drives
      // through it, and it rides smoother than gravel.
      return {c, true, true, 0.4};
    case VisualClass::kGravel:
      return {c, false, true, 0.8};
    case VisualClass::kWall:
    case VisualClass::kTree:
      return {c, true, false, 0.0};
  }
  throw std::invalid_argument("unknown visual class");
}

void validate_cell(const TerrainCell& cell) {
  if (!(cell.bumpiness_coeff >= 0.0 && cell.bumpiness_coeff <= 1.0)) {
    throw std::invalid_argument("bumpiness_coeff outside [0,1]: " +
                                std::to_string(cell.bumpiness_coeff));
  }
  switch (cell.visual_class) {
    case VisualClass::kWall:
    case VisualClass::kTree:
      if (!cell.geometric_occupancy || cell.physically_traversable) {
        throw std::invalid_argument(std::string(class_name(cell.visual_class)) +
                                    " must be occupied and untraversable");
      }
      break;
    case VisualClass::kTallGrass:
      if (!cell.geometric_occupancy || !cell.physically_traversable) {
        throw std::invalid_argument(
            "TallGrass must be occupied and traversable");
      }
      break;
    default:
      break;
  }
}

TerrainMap::TerrainMap(int width, int height, double cell_size,
                       TerrainCell fill)
    : width_(width), height_(height), cell_size_(cell_size) {
  if (width <= 0 || height <= 0 || !(cell_size > 0.0)) {
    throw std::invalid_argument("TerrainMap: non-positive dimensions");
  }
  cells_.assign(static_cast<size_t>(width) * height, fill);
}

const TerrainCell& TerrainMap::cell(int cx, int cy) const {
  if (!in_bounds(cx, cy)) return kOutOfBounds;
  return cells_[static_cast<size_t>(cy) * width_ + cx];
}

CellIndex TerrainMap::index_of(double x, double y) const {
  return {static_cast<int>(std::floor(x / cell_size_)),
          static_cast<int>(std::floor(y / cell_size_))};
}

const TerrainCell& TerrainMap::cell_at(double x, double y) const {
  const CellIndex c = index_of(x, y);
  return cell(c.cx, c.cy);
}

Vec2 TerrainMap::cell_center(int cx, int cy) const {
  return {(cx + 0.5) * cell_size_, (cy + 0.5) * cell_size_};
}

void TerrainMap::set(int cx, int cy, const TerrainCell& cell) {
  if (!in_bounds(cx, cy)) return;
  cells_[static_cast<size_t>(cy) * width_ + cx] = cell;
}

void TerrainMap::fill_rect(const Rect& r, const TerrainCell& cell) {
  for (int cy = 0; cy < height_; ++cy) {
    for (int cx = 0; cx < width_; ++cx) {
      const Vec2 c = cell_center(cx, cy);
      if (r.contains(c.x, c.y)) set(cx, cy, cell);
    }
  }
}

double mean_traversable_bumpiness(const TerrainMap& map) {
  double sum = 0.0;
  size_t n = 0;
  for (const auto& c : map.cells()) {
    if (!c.physically_traversable) continue;
    sum += c.bumpiness_coeff;
    ++n;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace badgr::sim
