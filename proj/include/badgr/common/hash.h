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

#ifndef BADGR_COMMON_HASH_H_
#define BADGR_COMMON_HASH_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace badgr {

// 64-bit FNV-1a. Used for config fingerprints and artifact hashes, not for
// anything security related.
class Fnv1a {
 public:
  void update(std::span<const std::byte> bytes);
  void update(std::string_view s);
  template <typename T>
  void update_pod(const T& value) {
    update(std::as_bytes(std::span<const T>(&value, 1)));
  }
  uint64_t digest() const { return state_; }

 private:
  uint64_t state_ = 14695981039346656037ull;
};

uint64_t hash_string(std::string_view s);
uint64_t hash_file(const std::filesystem::path& path);
std::string hex64(uint64_t value);

}  // namespace badgr

#endif  // BADGR_COMMON_HASH_H_
