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

#include "labeler/io.h"

#include <fstream>
#include <sstream>

#include "labeler/error.h"

namespace labeler {

std::string DumpJson(const nlohmann::json &value, int indent) {
  return value.dump(indent, ' ', false,
                    nlohmann::json::error_handler_t::replace);
}

std::string ReadTextFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kNotFound, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) {
    throw Error(ErrorCode::kIo, "short write to '" + path.string() + "'");
  }
}

nlohmann::json ReadJsonFile(const std::filesystem::path &path) {
  const std::string text = ReadTextFile(path);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw Error(ErrorCode::kParse,
                "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void WriteJsonFile(const std::filesystem::path &path,
                   const nlohmann::json &value) {
  WriteTextFile(path, DumpJson(value, 2) + "\n");
}

void ForEachJsonLine(
    std::istream &in, std::string_view source,
    const std::function<void(const nlohmann::json &, std::size_t)> &fn) {
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error &e) {
      throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                         std::to_string(line_number) +
                                         ": malformed JSON: " + e.what());
    }
    fn(record, line_number);
  }
}

}  // namespace labeler
