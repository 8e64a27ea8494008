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

#include "badgr/common/hash.h"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace badgr {

void Fnv1a::update(std::span<const std::byte> bytes) {
  for (std::byte b : bytes) {
    state_ ^= static_cast<uint64_t>(b);
    state_ *= 1099511628211ull;
  }
}

void Fnv1a::update(std::string_view s) {
  update(std::as_bytes(std::span<const char>(s.data(), s.size())));
}

uint64_t hash_string(std::string_view s) {
  Fnv1a h;
  h.update(s);
  return h.digest();
}

uint64_t hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Fnv1a h;
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto n = static_cast<size_t>(in.gcount());
    h.update(std::as_bytes(std::span<const char>(buf.data(), n)));
  }
  return h.digest();
}

std::string hex64(uint64_t value) {
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(value));
  return out;
}

}  // namespace badgr
