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

#include "labeler/mmr.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "labeler/error.h"

namespace labeler {

std::vector<std::size_t> MmrSelect(const EmbeddingVector &query,
                                   std::span<const EmbeddingVector> candidates,
                                   double lambda, std::size_t count) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "mmr lambda must be in [0, 1], got " + std::to_string(lambda));
  }
  if (count > candidates.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot select " + std::to_string(count) + " of " +
                    std::to_string(candidates.size()) + " candidates");
  }
  const std::size_t n = candidates.size();
  std::vector<double> relevance(n);
  for (std::size_t i = 0; i < n; ++i) relevance[i] = candidates[i].Cosine(query);

  // Running max similarity of each candidate to the selected set.
  std::vector<double> redundancy(n, -std::numeric_limits<double>::infinity());
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> selected;
  selected.reserve(count);
  while (selected.size() < count) {
    std::size_t best = n;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double score =
          selected.empty()
              ? relevance[i]
              : lambda * relevance[i] - (1.0 - lambda) * redundancy[i];
      if (best == n || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    taken[best] = true;
    selected.push_back(best);
    for (std::size_t i = 0; i < n; ++i) {
      if (!taken[i]) {
        redundancy[i] =
            std::max(redundancy[i], candidates[i].Cosine(candidates[best]));
      }
    }
  }
  return selected;
}

}  // namespace labeler
