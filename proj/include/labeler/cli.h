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

#ifndef LABELER_CLI_H_
#define LABELER_CLI_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace labeler {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Entry point of the `labeler` tool. `args` excludes the program name.
// Usage goes to `out`, diagnostics and structured logs to `err`; `in` feeds
// the interactive annotate subcommand. Settings come from an optional
// --config file, then flags, then the AI_EMBED_URL / AI_METADATA_URL
// environment variables, later sources overriding earlier ones.
int RunCli(const std::vector<std::string> &args, std::istream &in,
           std::ostream &out, std::ostream &err);

}  // namespace labeler

#endif  // LABELER_CLI_H_
