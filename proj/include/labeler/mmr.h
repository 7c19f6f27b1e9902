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

#ifndef LABELER_MMR_H_
#define LABELER_MMR_H_

#include <cstddef>
#include <span>
#include <vector>

#include "labeler/embedding.h"

namespace labeler {

// Maximal Marginal Relevance. Greedily picks `count` candidates, each time
// maximizing
//
//   lambda * cos(c, query) - (1 - lambda) * max_{s in selected} cos(c, s)
//
// The first pick is pure relevance. Ties go to the earliest candidate.
// Returns candidate indices in selection order.
//
// Throws kInvalidArgument if count > |candidates| or lambda is outside
// [0, 1].
std::vector<std::size_t> MmrSelect(const EmbeddingVector &query,
                                   std::span<const EmbeddingVector> candidates,
                                   double lambda, std::size_t count);

}  // namespace labeler

#endif  // LABELER_MMR_H_
