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

#ifndef LABELER_PARALLEL_H_
#define LABELER_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace labeler {

// Runs fn(i) for every i in [0, n) on up to `threads` workers
// (0 = hardware concurrency). Rethrows the exception from the lowest index
// that failed, after all workers have stopped.
void ParallelFor(std::size_t n, std::size_t threads,
                 const std::function<void(std::size_t)> &fn);

}  // namespace labeler

#endif  // LABELER_PARALLEL_H_
