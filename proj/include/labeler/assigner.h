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

#ifndef LABELER_ASSIGNER_H_
#define LABELER_ASSIGNER_H_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "labeler/extraction.h"
#include "labeler/labelspace.h"
#include "labeler/spacemetrics.h"

namespace labeler {

struct AssignmentParams {
  // Percentage of the document's k x c coverage entries to retain.
  double threshold_percent = 1.0;
  // Keep only each label's best retained entry.
  bool dedupe = true;

  // Throws kInvalidArgument unless 0 < threshold_percent <= 100.
  void Validate() const;
  nlohmann::json ToJson() const;
};

// max(1, floor(T / 100 * c * k)). A 1e-9 slack absorbs binary round-off so
// that e.g. T = 20, c * k = 75 gives exactly 15.
// Throws kInvalidArgument for c or k of zero or T outside (0, 100].
std::size_t RetainedCount(std::size_t c, std::size_t k, double threshold_percent);

struct PredictedLabel {
  std::string name;
  double weight = 0.0;
  std::string keyword;
};

struct Prediction {
  std::string doc_id;
  // Descending weight; ties in (label index, keyword index) order.
  std::vector<PredictedLabel> labels;
  std::size_t retained_entries = 0;

  std::vector<std::string> Names() const;
};

// Sorts the entries descending (ties by label index, then keyword index),
// keeps the first RetainedCount of them and maps them to label names.
// `keywords` names the matrix columns. Retaining a negative entry logs a
// warning. Throws kDimensionMismatch if the matrix shape does not match the
// space and keyword list.
Prediction Assign(const CoverageMatrix &matrix, const LabelSpace &space,
                  std::span<const std::string> keywords,
                  const AssignmentParams &params);

// One prediction per keyword set, same order.
std::vector<Prediction> AssignCorpus(std::span<const KeywordSet> sets,
                                     const LabelSpace &space,
                                     const AssignmentParams &params);

// JSONL: {"id", "labels": [{"name", "weight", "keyword"}], "retained_entries"}.
void WritePredictions(std::span<const Prediction> predictions, std::ostream &out);
void WritePredictions(std::span<const Prediction> predictions,
                      const std::filesystem::path &path);
std::vector<Prediction> ReadPredictions(std::istream &in, std::string_view source);
std::vector<Prediction> ReadPredictions(const std::filesystem::path &path);

}  // namespace labeler

#endif  // LABELER_ASSIGNER_H_
