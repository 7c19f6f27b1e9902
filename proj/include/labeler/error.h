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

#ifndef LABELER_ERROR_H_
#define LABELER_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace labeler {

enum class ErrorCode {
  kInvalidArgument,
  kNotFound,
  kParse,
  kDuplicate,
  kPrecondition,
  kDimensionMismatch,
  kProvider,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures surface as Error; the CLI maps the code to a
// structured diagnostic and a nonzero exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace labeler

#endif  // LABELER_ERROR_H_
