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

#ifndef LABELER_IO_H_
#define LABELER_IO_H_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <functional>
#include <istream>
#include <string>
#include <string_view>

namespace labeler {

// Compact, deterministic serialization. Invalid UTF-8 is replaced rather than
// rejected so that arbitrary abstracts can be logged and persisted.
std::string DumpJson(const nlohmann::json &value, int indent = -1);

std::string ReadTextFile(const std::filesystem::path &path);
void WriteTextFile(const std::filesystem::path &path, std::string_view text);

nlohmann::json ReadJsonFile(const std::filesystem::path &path);
// Pretty-printed with a two-space indent and a trailing newline.
void WriteJsonFile(const std::filesystem::path &path,
                   const nlohmann::json &value);

// Calls `fn(record, line_number)` for every non-blank line. Lines are
// 1-based. Parse failures throw kParse naming `source` and the line.
void ForEachJsonLine(
    std::istream &in, std::string_view source,
    const std::function<void(const nlohmann::json &, std::size_t)> &fn);

}  // namespace labeler

#endif  // LABELER_IO_H_
