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

#include "labeler/logging.h"

#include <atomic>
#include <iostream>
#include <mutex>
#include <string>

#include "labeler/error.h"
#include "labeler/io.h"

namespace labeler {
namespace {

std::mutex sink_mutex;
std::ostream *sink = &std::cerr;
std::atomic<int> min_level{static_cast<int>(LogLevel::kInfo)};

const char *LevelName(LogLevel level) {
  switch (level) {
    case LogLevel::kDebug: return "debug";
    case LogLevel::kInfo: return "info";
    case LogLevel::kWarning: return "warning";
    case LogLevel::kError: return "error";
  }
  return "info";
}

}  // namespace

void SetLogSink(std::ostream *new_sink) {
  std::lock_guard<std::mutex> lock(sink_mutex);
  sink = new_sink;
}

void SetLogLevel(LogLevel level) { min_level = static_cast<int>(level); }

LogLevel ParseLogLevel(std::string_view name) {
  if (name == "debug") return LogLevel::kDebug;
  if (name == "info") return LogLevel::kInfo;
  if (name == "warning") return LogLevel::kWarning;
  if (name == "error") return LogLevel::kError;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown log level '" + std::string(name) + "'");
}

void Log(LogLevel level, std::string_view event, nlohmann::json fields) {
  if (static_cast<int>(level) < min_level) return;
  nlohmann::json record = nlohmann::json::object();
  record["level"] = LevelName(level);
  record["event"] = std::string(event);
  if (fields.is_object()) {
    for (auto &[key, value] : fields.items()) record[key] = value;
  }
  const std::string line = DumpJson(record);
  std::lock_guard<std::mutex> lock(sink_mutex);
  if (sink != nullptr) *sink << line << '\n' << std::flush;
}

}  // namespace labeler
