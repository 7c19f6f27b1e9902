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

#include "labeler/spacemetrics.h"

#include <algorithm>
#include <cmath>

#include "labeler/error.h"

namespace labeler {

nlohmann::json RedundancyReport::ToJson() const {
  return {{"R", value},
          {"argmax_pair", {argmax_pair.first, argmax_pair.second}},
          {"mean_pairwise_cosine", mean_pairwise},
          {"matrix", matrix}};
}

RedundancyReport Redundancy(std::span<const EmbeddingVector> labels) {
  const std::size_t k = labels.size();
  if (k < 2) {
    throw Error(ErrorCode::kPrecondition,
                "redundancy needs at least 2 labels, got " + std::to_string(k));
  }
  RedundancyReport report;
  report.matrix.assign(k, std::vector<double>(k, 0.0));
  double sum = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < k; ++i) {
    report.matrix[i][i] = labels[i].Cosine(labels[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      const double cosine = labels[i].Cosine(labels[j]);
      report.matrix[i][j] = report.matrix[j][i] = cosine;
      sum += cosine;
      if (first || cosine > report.value) {
        report.value = cosine;
        report.argmax_pair = {i, j};
        first = false;
      }
    }
  }
  report.mean_pairwise = sum / static_cast<double>(k * (k - 1) / 2);
  return report;
}

RedundancyReport Redundancy(const LabelSpace &space) {
  return Redundancy(space.Embeddings());
}

CoverageMatrix::CoverageMatrix(std::string doc_id, std::size_t rows,
                               std::size_t cols, std::vector<double> entries)
    : doc_id_(std::move(doc_id)),
      rows_(rows),
      cols_(cols),
      entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kInvalidArgument,
                "coverage matrix needs " + std::to_string(rows_ * cols_) +
                    " entries, got " + std::to_string(entries_.size()));
  }
}

double CoverageMatrix::Max() const {
  if (entries_.empty()) {
    throw Error(ErrorCode::kPrecondition, "empty coverage matrix");
  }
  return *std::max_element(entries_.begin(), entries_.end());
}

CoverageMatrix ComputeCoverageMatrix(std::string doc_id,
                                     std::span<const EmbeddingVector> keywords,
                                     std::span<const EmbeddingVector> labels) {
  if (keywords.empty() || labels.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "document '" + doc_id + "': coverage needs keywords and labels");
  }
  std::vector<double> entries;
  entries.reserve(labels.size() * keywords.size());
  for (const EmbeddingVector &label : labels) {
    for (const EmbeddingVector &keyword : keywords) {
      if (label.dim() != keyword.dim()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "document '" + doc_id + "': label dimension " +
                        std::to_string(label.dim()) + " vs keyword dimension " +
                        std::to_string(keyword.dim()));
      }
      entries.push_back(label.Cosine(keyword));
    }
  }
  return CoverageMatrix(std::move(doc_id), labels.size(), keywords.size(),
                        std::move(entries));
}

CoverageMatrix ComputeCoverageMatrix(const KeywordSet &set,
                                     const LabelSpace &space) {
  return ComputeCoverageMatrix(set.doc_id, set.Embeddings(), space.Embeddings());
}

nlohmann::json CoverageReport::ToJson() const {
  nlohmann::json docs = nlohmann::json::array();
  for (const auto &[id, value] : per_document) {
    docs.push_back({{"id", id}, {"S", value}});
  }
  return {{"S_D", corpus_value}, {"per_document", std::move(docs)}};
}

CoverageReport Coverage(std::span<const CoverageMatrix> matrices) {
  if (matrices.empty()) {
    throw Error(ErrorCode::kPrecondition, "coverage of an empty corpus");
  }
  CoverageReport report;
  double sum = 0.0;
  for (const CoverageMatrix &m : matrices) {
    const double value = m.Max();
    report.per_document.emplace_back(m.doc_id(), value);
    sum += value;
  }
  report.corpus_value = sum / static_cast<double>(matrices.size());
  return report;
}

CoverageReport Coverage(std::span<const KeywordSet> sets,
                        const LabelSpace &space) {
  std::vector<CoverageMatrix> matrices;
  matrices.reserve(sets.size());
  for (const KeywordSet &set : sets) {
    matrices.push_back(ComputeCoverageMatrix(set, space));
  }
  return Coverage(matrices);
}

}  // namespace labeler
