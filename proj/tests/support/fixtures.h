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

#ifndef BADGR_TESTS_SUPPORT_FIXTURES_H_
#define BADGR_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <vector>

#include "badgr/labeler/labeler.h"
#include "badgr/model/model.h"
#include "badgr/sim/terrain.h"

namespace badgr::testing {

// Random camera observations, actions and labels; `lengths` gives the
// record count of each episode.
labeler::LabeledDataset random_dataset(uint64_t seed, int cam_rays, int ground_samples,
                                       const std::vector<int>& lengths);

model::ModelConfig tiny_model_config();

// All-FreeGround map of the given size in cells.
sim::TerrainMap open_map(int width = 40, int height = 40);

}  // namespace badgr::testing

#endif  // BADGR_TESTS_SUPPORT_FIXTURES_H_
