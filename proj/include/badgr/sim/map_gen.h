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

#ifndef BADGR_SIM_MAP_GEN_H_
#define BADGR_SIM_MAP_GEN_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "badgr/sim/terrain.h"

namespace badgr::sim {

enum class MapKind { kUrban, kOffRoad, kTallGrassCorridor, kNovelRandom };

std::string_view map_kind_name(MapKind kind);
std::optional<MapKind> map_kind_from_name(std::string_view name);

// Procedural maps. Deterministic in (kind, seed). A candidate without a
// physically traversable spawn->goal path is discarded and regenerated from
// a perturbed seed.
TerrainMap make_map(MapKind kind, uint64_t seed);

// Cell predicate used by the path searches below.
enum class Passability { kTraversable, kUnoccupied };

// Shortest 8-connected grid path (cell centers) from the spawn-region center
// to any goal-region cell; empty when none exists.
std::vector<CellIndex> shortest_path(const TerrainMap& map, Passability pass);

// Length in meters of a cell path.
double path_length(const TerrainMap& map, const std::vector<CellIndex>& path);

// Dijkstra with edge cost = step length * (epsilon + mean bumpiness of the two
// cells). Returns the path; empty when unreachable.
std::vector<CellIndex> smoothest_path(const TerrainMap& map);

// Start poses inside the spawn region with at least `clearance` meters to any
// geometrically occupied cell, heading roughly toward the goal. Deterministic.
std::vector<Pose2> sample_starts(const TerrainMap& map, int count, uint64_t seed,
                                 double clearance = 1.0);

// Distance from (x, y) to the nearest geometrically occupied cell, searched
// up to `limit` meters.
double clearance_at(const TerrainMap& map, double x, double y, double limit);

}  // namespace badgr::sim

#endif  // BADGR_SIM_MAP_GEN_H_
