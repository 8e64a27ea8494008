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

#include "badgr/labeler/dataset_io.h"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace badgr::labeler {
namespace {

constexpr char kMagic[8] = {'B', 'A', 'D', 'G', 'R', 'L', 'B', 'L'};
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw std::runtime_error("truncated dataset");
  return v;
}

}  // namespace

void write_dataset(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write dataset " + path.string());
  const size_t w = static_cast<size_t>(ds.cam_rays), d = static_cast<size_t>(ds.ground_samples);
  out.write(kMagic, sizeof(kMagic));
  put(out, kVersion);
  put<uint32_t>(out, static_cast<uint32_t>(w));
  put<uint32_t>(out, static_cast<uint32_t>(d));
  put<uint64_t>(out, ds.size());
  for (size_t i = 0; i < ds.size(); ++i) {
    put(out, ds.episode[i]);
    put(out, ds.action[i].v);
    put(out, ds.action[i].w);
    put(out, ds.collision[i]);
    put(out, ds.bumpy[i]);
    put(out, ds.odom[i].x);
    put(out, ds.odom[i].y);
    put(out, ds.odom[i].heading);
    out.write(reinterpret_cast<const char*>(&ds.obstacle_class[i * w]), static_cast<std::streamsize>(w));
    out.write(reinterpret_cast<const char*>(&ds.obstacle_dist[i * w]),
              static_cast<std::streamsize>(w * sizeof(float)));
    out.write(reinterpret_cast<const char*>(&ds.ground_class[i * w * d]),
              static_cast<std::streamsize>(w * d));
  }
  if (!out) throw std::runtime_error("write failed for dataset " + path.string());
}

LabeledDataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read dataset " + path.string());
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not a labelled dataset: " + path.string());
  }
  if (get<uint32_t>(in) != kVersion) throw std::runtime_error("unsupported dataset version");
  LabeledDataset ds;
  ds.cam_rays = static_cast<int>(get<uint32_t>(in));
  ds.ground_samples = static_cast<int>(get<uint32_t>(in));
  const uint64_t n = get<uint64_t>(in);
  const size_t w = static_cast<size_t>(ds.cam_rays), d = static_cast<size_t>(ds.ground_samples);
  ds.episode.resize(n);
  ds.action.resize(n);
  ds.collision.resize(n);
  ds.bumpy.resize(n);
  ds.odom.resize(n);
  ds.obstacle_class.resize(n * w);
  ds.obstacle_dist.resize(n * w);
  ds.ground_class.resize(n * w * d);
  for (size_t i = 0; i < n; ++i) {
    ds.episode[i] = get<uint32_t>(in);
    ds.action[i].v = get<double>(in);
    ds.action[i].w = get<double>(in);
    ds.collision[i] = get<uint8_t>(in);
    ds.bumpy[i] = get<uint8_t>(in);
    ds.odom[i].x = get<double>(in);
    ds.odom[i].y = get<double>(in);
    ds.odom[i].heading = get<double>(in);
    in.read(reinterpret_cast<char*>(&ds.obstacle_class[i * w]), static_cast<std::streamsize>(w));
    in.read(reinterpret_cast<char*>(&ds.obstacle_dist[i * w]),
            static_cast<std::streamsize>(w * sizeof(float)));
    in.read(reinterpret_cast<char*>(&ds.ground_class[i * w * d]), static_cast<std::streamsize>(w * d));
    if (!in) throw std::runtime_error("truncated dataset");
  }
  return ds;
}

}  // namespace badgr::labeler
