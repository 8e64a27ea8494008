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

#include "badgr/sim/map_gen.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "badgr/common/rng.h"

namespace badgr::sim {
namespace {

constexpr int kGridCells = 40;
constexpr double kCellSize = 0.5;
constexpr int kMaxAttempts = 64;

void fill_disk(TerrainMap& m, Vec2 c, double r, const TerrainCell& cell) {
  for (int cy = 0; cy < m.height(); ++cy) {
    for (int cx = 0; cx < m.width(); ++cx) {
      const Vec2 p = m.cell_center(cx, cy);
      if (std::hypot(p.x - c.x, p.y - c.y) <= r) m.set(cx, cy, cell);
    }
  }
}

// Irregular blob: union of a few overlapping disks.
void fill_blob(TerrainMap& m, Rng& rng, Vec2 c, double r, const TerrainCell& cell) {
  fill_disk(m, c, r, cell);
  const int lobes = 2 + static_cast<int>(uniform(rng, 0.0, 3.0));
  for (int i = 0; i < lobes; ++i) {
    const double a = uniform(rng, -kPi, kPi);
    const double d = uniform(rng, 0.3, 0.8) * r;
    fill_disk(m, {c.x + d * std::cos(a), c.y + d * std::sin(a)},
              uniform(rng, 0.5, 0.8) * r, cell);
  }
}

void fill_thick_line(TerrainMap& m, Vec2 a, Vec2 b, double width,
                     const TerrainCell& cell) {
  const double half = 0.5 * width;
  const double len2 = (b.x - a.x) * (b.x - a.x) + (b.y - a.y) * (b.y - a.y);
  for (int cy = 0; cy < m.height(); ++cy) {
    for (int cx = 0; cx < m.width(); ++cx) {
      const Vec2 p = m.cell_center(cx, cy);
      double t = len2 > 0 ? ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double qx = a.x + t * (b.x - a.x), qy = a.y + t * (b.y - a.y);
      if (std::hypot(p.x - qx, p.y - qy) <= half) m.set(cx, cy, cell);
    }
  }
}

// Min distance from (x, y) to any cell of class `c`.
double distance_to_class(const TerrainMap& m, double x, double y, VisualClass c) {
  double best = std::numeric_limits<double>::infinity();
  for (int cy = 0; cy < m.height(); ++cy) {
    for (int cx = 0; cx < m.width(); ++cx) {
      if (m.cell(cx, cy).visual_class != c) continue;
      const Vec2 p = m.cell_center(cx, cy);
      best = std::min(best, std::hypot(p.x - x, p.y - y));
    }
  }
  return best;
}

Rect grow(const Rect& r, double d) {
  return {r.x_min - d, r.y_min - d, r.x_max + d, r.y_max + d};
}

bool near_region(const Rect& r, double x, double y, double margin) {
  return grow(r, margin).contains(x, y);
}

// Scatters `count` trees (1x1 or 2x2 cells) away from the spawn/goal regions
// and at least `grass_gap` meters from any TallGrass.
void scatter_trees(TerrainMap& m, Rng& rng, int count, double grass_gap) {
  const TerrainCell tree = make_cell(VisualClass::kTree);
  int placed = 0;
  for (int tries = 0; placed < count && tries < count * 50; ++tries) {
    const double x = uniform(rng, 0.5, m.world_width() - 0.5);
    const double y = uniform(rng, 0.5, m.world_height() - 0.5);
    if (near_region(m.spawn_region(), x, y, 1.5) || near_region(m.goal_region(), x, y, 1.5)) continue;
    if (distance_to_class(m, x, y, VisualClass::kTallGrass) < grass_gap) continue;
    const CellIndex c = m.index_of(x, y);
    const int size = uniform(rng, 0.0, 1.0) < 0.6 ? 2 : 1;
    for (int dy = 0; dy < size; ++dy)
      for (int dx = 0; dx < size; ++dx) m.set(c.cx + dx, c.cy + dy, tree);
    ++placed;
  }
}

void clear_regions(TerrainMap& m, const TerrainCell& ground) {
  m.fill_rect(grow(m.spawn_region(), 0.5), ground);
  m.fill_rect(grow(m.goal_region(), 0.5), ground);
}

TerrainMap make_urban(Rng& rng) {
  TerrainMap m(kGridCells, kGridCells, kCellSize, make_cell(VisualClass::kGrass));
  const double W = m.world_width();
  const TerrainCell concrete = make_cell(VisualClass::kConcrete);
  const TerrainCell wall = make_cell(VisualClass::kWall);

  const double gx = W / 2 + uniform(rng, -3.0, 3.0);
  const double gy = 17.2;
  m.set_goal_region({gx - 1.0, gy - 1.0, gx + 1.0, gy + 1.0});
  m.set_spawn_region({2.0, 1.2, W - 2.0, 3.2});

  // One row of buildings with walkable passages between them.
  const double row_y = uniform(rng, 7.0, 8.5);
  const double row_h = uniform(rng, 3.0, 4.5);
  std::array<double, 3> widths;
  for (double& w : widths) w = uniform(rng, 3.5, 5.0);
  std::array<double, 2> gaps = {uniform(rng, 3.0, 4.0), uniform(rng, 3.0, 4.0)};
  const double used = widths[0] + widths[1] + widths[2] + gaps[0] + gaps[1];
  const double spare = std::max(0.0, W - used);
  double x = spare * uniform(rng, 0.3, 0.7);

  std::vector<double> passages;  // x centers of drivable passages
  if (x >= 2.5) passages.push_back(x / 2);
  for (int i = 0; i < 3; ++i) {
    m.fill_rect({x, row_y, x + widths[i], row_y + row_h}, wall);
    x += widths[i];
    if (i < 2) {
      passages.push_back(x + gaps[i] / 2);
      x += gaps[i];
    }
  }
  if (W - x >= 2.5) passages.push_back((x + W) / 2);

  // Sidewalks: up through each passage, then on to the goal plaza.
  const double top = row_y + row_h + 1.0;
  for (double px : passages) {
    fill_thick_line(m, {px, 1.0}, {px, top}, 2.0, concrete);
    fill_thick_line(m, {px, top}, {gx, gy}, 2.0, concrete);
  }
  fill_thick_line(m, {1.0, 2.2}, {W - 1.0, 2.2}, 1.5, concrete);
  m.fill_rect(grow(m.goal_region(), 0.5), concrete);

  // Planters: small walled boxes on the grass past the building row.
  const int planters = 1 + static_cast<int>(uniform(rng, 0.0, 2.0));
  for (int i = 0; i < planters; ++i) {
    const double px = uniform(rng, 2.0, W - 3.0);
    const double py = uniform(rng, row_y + row_h + 2.0, 14.0);
    if (m.cell_at(px, py).visual_class == VisualClass::kConcrete) continue;
    if (near_region(m.goal_region(), px, py, 2.5)) continue;
    m.fill_rect({px, py, px + 1.0, py + 1.0}, wall);
  }
  return m;
}

TerrainMap make_offroad(Rng& rng) {
  TerrainMap m(kGridCells, kGridCells, kCellSize, make_cell(VisualClass::kFreeGround));
  const double W = m.world_width();
  const double gx = W / 2 + uniform(rng, -4.0, 4.0);
  m.set_goal_region({gx - 1.0, 16.2, gx + 1.0, 18.2});
  m.set_spawn_region({2.0, 1.2, W - 2.0, 3.2});

  for (int i = 0; i < 4; ++i) {
    fill_blob(m, rng, {uniform(rng, 2, W - 2), uniform(rng, 3, W - 3)},
              uniform(rng, 1.5, 3.0), make_cell(VisualClass::kGravel));
  }
  for (int i = 0; i < 2; ++i) {
    fill_blob(m, rng, {uniform(rng, 2, W - 2), uniform(rng, 3, W - 3)},
              uniform(rng, 1.5, 3.0), make_cell(VisualClass::kGrass));
  }
  // A tall-grass belt across the whole width: every route crosses it.
  const TerrainCell tall = make_cell(VisualClass::kTallGrass);
  const double y0 = uniform(rng, 8.5, 10.5), y1 = uniform(rng, 8.5, 10.5);
  fill_thick_line(m, {0.0, y0}, {W, y1}, uniform(rng, 1.5, 2.5), tall);
  for (int i = 0; i < 3; ++i) {
    const double bx = uniform(rng, 2, W - 2);
    fill_blob(m, rng, {bx, y0 + (y1 - y0) * bx / W}, uniform(rng, 1.0, 1.8), tall);
  }
  fill_blob(m, rng, {uniform(rng, 2, W - 2), uniform(rng, 13, 15)}, uniform(rng, 1.0, 1.8), tall);
  clear_regions(m, make_cell(VisualClass::kFreeGround));
  scatter_trees(m, rng, 22, 1.5);
  return m;
}

TerrainMap make_tall_grass_corridor(Rng& rng) {
  TerrainMap m(kGridCells, kGridCells, kCellSize, make_cell(VisualClass::kFreeGround));
  const double W = m.world_width();
  const bool gap_right = uniform(rng, 0.0, 1.0) < 0.5;
  auto mx = [&](double x) { return gap_right ? x : W - x; };

  const double lane = uniform(rng, 5.0, 7.0);  // x of spawn and goal
  const double band_y = uniform(rng, 8.5, 9.5);
  const double band_h = uniform(rng, 1.5, 2.5);
  const double band_end = 13.5;  // gap spans band_end .. W
  const Rect band = gap_right ? Rect{0.0, band_y, band_end, band_y + band_h}
                              : Rect{W - band_end, band_y, W, band_y + band_h};
  m.fill_rect(band, make_cell(VisualClass::kTallGrass));

  const double sx = mx(lane);
  m.set_spawn_region({sx - 2.5, 1.2, sx + 2.5, 3.2});
  m.set_goal_region({sx - 1.0, 16.5, sx + 1.0, 18.5});

  // A little texture away from the band.
  for (int i = 0; i < 2; ++i) {
    fill_blob(m, rng, {mx(uniform(rng, 14.5, 18.0)), uniform(rng, 3.0, 6.0)},
              uniform(rng, 1.0, 1.8), make_cell(VisualClass::kGravel));
  }
  clear_regions(m, make_cell(VisualClass::kFreeGround));
  return m;
}

TerrainMap make_novel_random(Rng& rng) {
  constexpr std::array<VisualClass, 3> kGrounds = {
      VisualClass::kFreeGround, VisualClass::kConcrete, VisualClass::kGrass};
  const VisualClass ground = kGrounds[static_cast<size_t>(uniform(rng, 0.0, 3.0)) % 3];
  TerrainMap m(kGridCells, kGridCells, kCellSize, make_cell(ground));
  const double W = m.world_width();
  const double gx = W / 2 + uniform(rng, -5.0, 5.0);
  m.set_goal_region({gx - 1.0, 16.2, gx + 1.0, 18.2});
  m.set_spawn_region({2.0, 1.2, W - 2.0, 3.2});

  const int patches = 2 + static_cast<int>(uniform(rng, 0.0, 3.0));
  for (int i = 0; i < patches; ++i) {
    const VisualClass c = uniform(rng, 0.0, 1.0) < 0.5 ? VisualClass::kGravel : VisualClass::kGrass;
    fill_blob(m, rng, {uniform(rng, 2, W - 2), uniform(rng, 3, W - 3)},
              uniform(rng, 1.5, 3.0), make_cell(c));
  }
  const int grass = static_cast<int>(uniform(rng, 1.0, 3.0));
  for (int i = 0; i < grass; ++i) {
    fill_blob(m, rng, {uniform(rng, 2, W - 2), uniform(rng, 5, W - 5)},
              uniform(rng, 1.2, 2.2), make_cell(VisualClass::kTallGrass));
  }
  const int walls = 1 + static_cast<int>(uniform(rng, 0.0, 2.0));
  for (int i = 0; i < walls; ++i) {
    const double w = uniform(rng, 1.5, 4.0), h = uniform(rng, 1.0, 3.0);
    const double x = uniform(rng, 1.0, W - 1.0 - w), y = uniform(rng, 6.0, 13.0);
    m.fill_rect({x, y, x + w, y + h}, make_cell(VisualClass::kWall));
  }
  clear_regions(m, make_cell(ground));
  scatter_trees(m, rng, 8 + static_cast<int>(uniform(rng, 0.0, 8.0)), 1.5);
  return m;
}

TerrainMap generate(MapKind kind, Rng& rng) {
  switch (kind) {
    case MapKind::kUrban:
      return make_urban(rng);
    case MapKind::kOffRoad:
      return make_offroad(rng);
    case MapKind::kTallGrassCorridor:
      return make_tall_grass_corridor(rng);
    case MapKind::kNovelRandom:
      return make_novel_random(rng);
  }
  throw std::invalid_argument("unknown map kind");
}

bool passable(const TerrainCell& c, Passability pass) {
  return pass == Passability::kTraversable ? c.physically_traversable
                                           : !c.geometric_occupancy;
}

using CostFn = std::function<double(const TerrainCell&, const TerrainCell&, double)>;

std::vector<CellIndex> dijkstra(const TerrainMap& m, Passability pass, const CostFn& cost) {
  const int w = m.width(), h = m.height();
  const CellIndex start = m.index_of(m.spawn_region().center().x, m.spawn_region().center().y);
  if (!passable(m.cell(start.cx, start.cy), pass)) return {};
  std::vector<double> dist(static_cast<size_t>(w) * h, std::numeric_limits<double>::infinity());
  std::vector<int> prev(dist.size(), -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const int s = start.cy * w + start.cx;
  dist[s] = 0.0;
  pq.push({0.0, s});
  int goal = -1;
  while (!pq.empty()) {
    const auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    const int ux = u % w, uy = u / w;
    const Vec2 uc = m.cell_center(ux, uy);
    if (m.goal_region().contains(uc.x, uc.y)) {
      goal = u;
      break;
    }
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const int vx = ux + dx, vy = uy + dy;
        if (!m.in_bounds(vx, vy) || !passable(m.cell(vx, vy), pass)) continue;
        if (dx != 0 && dy != 0 &&
            (!passable(m.cell(ux + dx, uy), pass) || !passable(m.cell(ux, uy + dy), pass))) {
          continue;  // no corner cutting
        }
        const double len = (dx != 0 && dy != 0 ? std::sqrt(2.0) : 1.0) * m.cell_size();
        const int v = vy * w + vx;
        const double nd = d + cost(m.cell(ux, uy), m.cell(vx, vy), len);
        if (nd < dist[v]) {
          dist[v] = nd;
          prev[v] = u;
          pq.push({nd, v});
        }
      }
    }
  }
  if (goal < 0) return {};
  std::vector<CellIndex> path;
  for (int v = goal; v >= 0; v = prev[v]) path.push_back({v % w, v / w});
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::string_view map_kind_name(MapKind kind) {
  switch (kind) {
    case MapKind::kUrban:
      return "urban";
    case MapKind::kOffRoad:
      return "offroad";
    case MapKind::kTallGrassCorridor:
      return "tallgrass";
    case MapKind::kNovelRandom:
      return "novel";
  }
  return "?";
}

std::optional<MapKind> map_kind_from_name(std::string_view name) {
  for (MapKind k : {MapKind::kUrban, MapKind::kOffRoad, MapKind::kTallGrassCorridor,
                    MapKind::kNovelRandom}) {
    if (map_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

TerrainMap make_map(MapKind kind, uint64_t seed) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(attempt == 0 ? seed : derive_seed(seed, attempt));
    TerrainMap m = generate(kind, rng);
    if (!shortest_path(m, Passability::kTraversable).empty()) return m;
  }
  throw std::runtime_error("make_map: no traversable layout after retries");
}

std::vector<CellIndex> shortest_path(const TerrainMap& map, Passability pass) {
  return dijkstra(map, pass,
                  [](const TerrainCell&, const TerrainCell&, double len) { return len; });
}

std::vector<CellIndex> smoothest_path(const TerrainMap& map) {
  return dijkstra(map, Passability::kTraversable,
                  [](const TerrainCell& a, const TerrainCell& b, double len) {
                    return len * (0.05 + 0.5 * (a.bumpiness_coeff + b.bumpiness_coeff));
                  });
}

double path_length(const TerrainMap& map, const std::vector<CellIndex>& path) {
  double len = 0.0;
  for (size_t i = 1; i < path.size(); ++i) {
    const Vec2 a = map.cell_center(path[i - 1].cx, path[i - 1].cy);
    const Vec2 b = map.cell_center(path[i].cx, path[i].cy);
    len += std::hypot(b.x - a.x, b.y - a.y);
  }
  return len;
}

double clearance_at(const TerrainMap& map, double x, double y, double limit) {
  const int r = static_cast<int>(std::ceil(limit / map.cell_size())) + 1;
  const CellIndex c = map.index_of(x, y);
  double best = limit;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const int cx = c.cx + dx, cy = c.cy + dy;
      if (!map.cell(cx, cy).geometric_occupancy) continue;
      // Distance from the point to the cell's square.
      const double x0 = cx * map.cell_size(), y0 = cy * map.cell_size();
      const double ddx = std::max({x0 - x, 0.0, x - (x0 + map.cell_size())});
      const double ddy = std::max({y0 - y, 0.0, y - (y0 + map.cell_size())});
      best = std::min(best, std::hypot(ddx, ddy));
    }
  }
  return best;
}

std::vector<Pose2> sample_starts(const TerrainMap& map, int count, uint64_t seed,
                                 double clearance) {
  Rng rng(derive_seed(seed, 0x5747));
  const Rect& r = map.spawn_region();
  const Vec2 goal = map.goal_region().center();
  std::vector<Pose2> out;
  for (int i = 0; i < count; ++i) {
    const double bin = (r.x_max - r.x_min) / count;
    Pose2 p{r.center().x, r.center().y, 0.0};
    for (int tries = 0; tries < 200; ++tries) {
      const double x = tries < 100 ? r.x_min + bin * (i + uniform(rng, 0.1, 0.9))
                                   : uniform(rng, r.x_min, r.x_max);
      const double y = uniform(rng, r.y_min, r.y_max);
      if (!map.cell_at(x, y).physically_traversable) continue;
      if (clearance_at(map, x, y, clearance) < clearance) continue;
      p.x = x;
      p.y = y;
      break;
    }
    p.heading = wrap_angle(std::atan2(goal.y - p.y, goal.x - p.x) + uniform(rng, -0.3, 0.3));
    out.push_back(p);
  }
  return out;
}

}  // namespace badgr::sim
