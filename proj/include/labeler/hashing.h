// Copyright 2026 The Labeler Authors
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

#ifndef LABELER_HASHING_H_
#define LABELER_HASHING_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace labeler {

// 64-bit FNV-1a. Stable across platforms; the mock embedder's bin layout
// depends on it.
constexpr std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

}  // namespace labeler

#endif  // LABELER_HASHING_H_
