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

#ifndef BADGR_SIM_MAP_IO_H_
#define BADGR_SIM_MAP_IO_H_

#include <filesystem>
#include <string>

#include "badgr/sim/terrain.h"

namespace badgr::sim {

// Map files are JSON documents:
//
//   {
//     "format": "badgr-map", "version": 1,
//     "cell_size": 0.5, "width": 40, "height": 40,
//     "spawn_region": {"x_min": .., "y_min": .., "x_max": .., "y_max": ..},
//     "goal_region":  {...},
//     "legend": {"#": {"class": "Wall", "occupied": true,
//                      "traversable": false, "bumpiness": 0.0}, ...},
//     "grid": ["<width chars>", ...]   // first string is the TOP row
//   }
//
// Every legend entry must satisfy the TerrainCell class invariants.
std::string map_to_string(const TerrainMap& map);
TerrainMap map_from_string(const std::string& text);

void save_map(const TerrainMap& map, const std::filesystem::path& path);
TerrainMap load_map(const std::filesystem::path& path);

}  // namespace badgr::sim

#endif  // BADGR_SIM_MAP_IO_H_
