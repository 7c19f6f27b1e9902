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

#ifndef LABELER_LOGGING_H_
#define LABELER_LOGGING_H_

#include <nlohmann/json.hpp>

#include <ostream>
#include <string_view>

namespace labeler {

enum class LogLevel { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3 };

// Log records are single-line JSON objects:
//   {"level":"info","event":"extract.done","documents":60}
// Writes are serialized; the sink defaults to std::cerr.
void SetLogSink(std::ostream *sink);
void SetLogLevel(LogLevel level);
LogLevel ParseLogLevel(std::string_view name);

void Log(LogLevel level, std::string_view event,
         nlohmann::json fields = nlohmann::json::object());

inline void LogInfo(std::string_view event,
                    nlohmann::json fields = nlohmann::json::object()) {
  Log(LogLevel::kInfo, event, std::move(fields));
}
inline void LogWarning(std::string_view event,
                       nlohmann::json fields = nlohmann::json::object()) {
  Log(LogLevel::kWarning, event, std::move(fields));
}

}  // namespace labeler

#endif  // LABELER_LOGGING_H_
