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

#ifndef BADGR_COLLECTOR_RECORD_IO_H_
#define BADGR_COLLECTOR_RECORD_IO_H_

#include <filesystem>
#include <vector>

#include "badgr/collector/collector.h"

namespace badgr::collector {

// Raw shard file, little-endian:
//
//   char[8]  "BADGRRAW"
//   u32      version (1)
//   u32      camera rays W, ground samples D, range rays R
//   u64      record count
//   per record:
//     u64 timestamp, u64 episode_id, u8 fired, u8 detector_mode,
//     f64 action.v, f64 action.w,
//     u8[W] cam_obstacle_class, f32[W] cam_obstacle_dist,
//     u8[W*D] cam_ground_class, f32[R] range_scan,
//     f64 imu_w_mag, imu_a_mag, odom.x, odom.y, odom.heading,
//         cmd_v, cmd_w, odom_v, odom_w
//
// Distances are stored in single precision; everything else round-trips
// exactly.
void write_shard(const std::vector<RawRecord>& records, const std::filesystem::path& path);
std::vector<RawRecord> read_shard(const std::filesystem::path& path);

}  // namespace badgr::collector

#endif  // BADGR_COLLECTOR_RECORD_IO_H_
