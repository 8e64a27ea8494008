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

#ifndef BADGR_LABELER_DATASET_IO_H_
#define BADGR_LABELER_DATASET_IO_H_

#include <filesystem>

#include "badgr/labeler/labeler.h"

namespace badgr::labeler {

// Labelled dataset file, little-endian:
//
//   char[8] "BADGRLBL", u32 version (1), u32 W, u32 D, u64 N
//   per record: u32 episode, f64 action.v, f64 action.w, u8 collision,
//               u8 bumpy, f64 odom.x, f64 odom.y, f64 odom.heading,
//               u8[W] obstacle_class, f32[W] obstacle_dist, u8[W*D] ground_class
//
// Training windows are rebuilt from the records with build_samples().
void write_dataset(const LabeledDataset& ds, const std::filesystem::path& path);
LabeledDataset read_dataset(const std::filesystem::path& path);

}  // namespace badgr::labeler

#endif  // BADGR_LABELER_DATASET_IO_H_
