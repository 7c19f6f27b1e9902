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

#ifndef LABELER_SPACEMETRICS_H_
#define LABELER_SPACEMETRICS_H_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "labeler/embedding.h"
#include "labeler/extraction.h"
#include "labeler/labelspace.h"

namespace labeler {

inline constexpr double kCoverageBoundSlack = 1e-9;

struct RedundancyReport {
  // Largest off-diagonal cosine.
  double value = 0.0;
  // Lexicographically first (i, j), i < j, attaining the value.
  std::pair<std::size_t, std::size_t> argmax_pair{0, 1};
  std::vector<std::vector<double>> matrix;
  // Mean off-diagonal cosine. A diagnostic only; not a figure of merit.
  double mean_pairwise = 0.0;

  nlohmann::json ToJson() const;
};

// Throws kPrecondition for fewer than two labels.
RedundancyReport Redundancy(std::span<const EmbeddingVector> labels);
RedundancyReport Redundancy(const LabelSpace &space);

// W = L C: entry (i, j) is the inner product of label i and keyword j.
class CoverageMatrix {
 public:
  CoverageMatrix(std::string doc_id, std::size_t rows, std::size_t cols,
                 std::vector<double> entries);

  const std::string &doc_id() const { return doc_id_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double at(std::size_t label, std::size_t keyword) const {
    return entries_[label * cols_ + keyword];
  }
  const std::vector<double> &entries() const { return entries_; }
  // The document coverage S^d.
  double Max() const;

 private:
  std::string doc_id_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

// Throws kDimensionMismatch when label and keyword dimensions differ and
// kInvalidArgument when either side is empty.
CoverageMatrix ComputeCoverageMatrix(std::string doc_id,
                                     std::span<const EmbeddingVector> keywords,
                                     std::span<const EmbeddingVector> labels);
CoverageMatrix ComputeCoverageMatrix(const KeywordSet &set,
                                     const LabelSpace &space);

struct CoverageReport {
  // Corpus order.
  std::vector<std::pair<std::string, double>> per_document;
  // Mean of the per-document values, summed in corpus order.
  double corpus_value = 0.0;

  nlohmann::json ToJson() const;
};

// Throws kPrecondition for an empty keyword collection.
CoverageReport Coverage(std::span<const CoverageMatrix> matrices);
CoverageReport Coverage(std::span<const KeywordSet> sets,
                        const LabelSpace &space);

}  // namespace labeler

#endif  // LABELER_SPACEMETRICS_H_
