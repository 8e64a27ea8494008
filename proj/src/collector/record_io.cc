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

#include "badgr/collector/record_io.h"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace badgr::collector {
namespace {

constexpr char kMagic[8] = {'B', 'A', 'D', 'G', 'R', 'R', 'A', 'W'};
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated shard");
  return v;
}

}  // namespace

void write_shard(const std::vector<RawRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write shard " + path.string());
  uint32_t w = 0, d = 0, r = 0;
  if (!records.empty()) {
    const auto& f = records.front().frame;
    w = static_cast<uint32_t>(f.cam_obstacle_class.size());
    d = w == 0 ? 0 : static_cast<uint32_t>(f.cam_ground_class.size() / w);
    r = static_cast<uint32_t>(f.range_scan.size());
  }
  out.write(kMagic, sizeof(kMagic));
  put(out, kVersion);
  put(out, w);
  put(out, d);
  put(out, r);
  put<uint64_t>(out, records.size());
  for (const RawRecord& rec : records) {
    const auto& f = rec.frame;
    if (f.cam_obstacle_class.size() != w || f.cam_obstacle_dist.size() != w ||
        f.cam_ground_class.size() != size_t{w} * d || f.range_scan.size() != r) {
      throw std::runtime_error("write_shard: inconsistent frame dimensions");
    }
    put(out, rec.timestamp);
    put(out, rec.episode_id);
    put<uint8_t>(out, rec.collision_detector_fired ? 1 : 0);
    put<uint8_t>(out, static_cast<uint8_t>(rec.detector_mode));
    put(out, rec.action.v);
    put(out, rec.action.w);
    for (auto c : f.cam_obstacle_class) put<uint8_t>(out, static_cast<uint8_t>(c));
    for (double x : f.cam_obstacle_dist) put<float>(out, static_cast<float>(x));
    for (auto c : f.cam_ground_class) put<uint8_t>(out, static_cast<uint8_t>(c));
    for (double x : f.range_scan) put<float>(out, static_cast<float>(x));
    for (double x : {f.imu_w_mag, f.imu_a_mag, f.odom.x, f.odom.y, f.odom.heading, f.cmd_v,
                     f.cmd_w, f.odom_v, f.odom_w}) {
      put(out, x);
    }
  }
  if (!out) throw std::runtime_error("write failed for shard " + path.string());
}

std::vector<RawRecord> read_shard(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read shard " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a raw shard: " + path.string());
  }
  if (get<uint32_t>(in) != kVersion) throw std::runtime_error("unsupported shard version");
  const uint32_t w = get<uint32_t>(in), d = get<uint32_t>(in), r = get<uint32_t>(in);
  const uint64_t n = get<uint64_t>(in);
  std::vector<RawRecord> records(n);
  for (RawRecord& rec : records) {
    auto& f = rec.frame;
    rec.timestamp = get<uint64_t>(in);
    rec.episode_id = get<uint64_t>(in);
    rec.collision_detector_fired = get<uint8_t>(in) != 0;
    const uint8_t mode = get<uint8_t>(in);
    if (mode > 1) throw std::runtime_error("bad detector mode in shard");
    rec.detector_mode = static_cast<DetectorMode>(mode);
    rec.action.v = get<double>(in);
    rec.action.w = get<double>(in);
    f.cam_obstacle_class.resize(w);
    for (auto& c : f.cam_obstacle_class) c = static_cast<sim::VisualClass>(get<uint8_t>(in));
    f.cam_obstacle_dist.resize(w);
    for (auto& x : f.cam_obstacle_dist) x = get<float>(in);
    f.cam_ground_class.resize(size_t{w} * d);
    for (auto& c : f.cam_ground_class) c = static_cast<sim::VisualClass>(get<uint8_t>(in));
    f.range_scan.resize(r);
    for (auto& x : f.range_scan) x = get<float>(in);
    for (double* x : {&f.imu_w_mag, &f.imu_a_mag, &f.odom.x, &f.odom.y, &f.odom.heading,
                      &f.cmd_v, &f.cmd_w, &f.odom_v, &f.odom_w}) {
      *x = get<double>(in);
    }
  }
  return records;
}

}  // namespace badgr::collector
