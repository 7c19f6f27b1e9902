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

#include "labeler/assigner.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "labeler/error.h"
#include "labeler/io.h"
#include "labeler/logging.h"

namespace labeler {

void AssignmentParams::Validate() const {
  if (!(threshold_percent > 0.0 && threshold_percent <= 100.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "threshold must be in (0, 100], got " +
                    std::to_string(threshold_percent));
  }
}

nlohmann::json AssignmentParams::ToJson() const {
  return {{"threshold_percent", threshold_percent}, {"dedupe", dedupe}};
}

std::size_t RetainedCount(std::size_t c, std::size_t k, double threshold_percent) {
  if (c == 0 || k == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "keyword and label counts must be >= 1");
  }
  AssignmentParams{threshold_percent, true}.Validate();
  const double exact = threshold_percent * static_cast<double>(c) *
                       static_cast<double>(k) / 100.0;
  const auto count = static_cast<std::size_t>(std::floor(exact + 1e-9));
  return std::max<std::size_t>(1, count);
}

std::vector<std::string> Prediction::Names() const {
  std::vector<std::string> out;
  for (const PredictedLabel &label : labels) out.push_back(label.name);
  return out;
}

Prediction Assign(const CoverageMatrix &matrix, const LabelSpace &space,
                  std::span<const std::string> keywords,
                  const AssignmentParams &params) {
  params.Validate();
  if (matrix.rows() != space.size() || matrix.cols() != keywords.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "document '" + matrix.doc_id() + "': coverage matrix is " +
                    std::to_string(matrix.rows()) + "x" +
                    std::to_string(matrix.cols()) + " but the space has " +
                    std::to_string(space.size()) + " labels and " +
                    std::to_string(keywords.size()) + " keywords were given");
  }
  const std::size_t total = matrix.rows() * matrix.cols();
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  // Row-major flat indices already encode (label, keyword) order.
  const auto &w = matrix.entries();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });

  Prediction prediction;
  prediction.doc_id = matrix.doc_id();
  prediction.retained_entries =
      RetainedCount(matrix.cols(), matrix.rows(), params.threshold_percent);
  std::set<std::size_t> seen;
  for (std::size_t r = 0; r < prediction.retained_entries; ++r) {
    const std::size_t label = order[r] / matrix.cols();
    const std::size_t keyword = order[r] % matrix.cols();
    const double weight = w[order[r]];
    if (weight < 0.0) {
      LogWarning("negative_weight_retained", {{"id", matrix.doc_id()},
                                              {"label", space.labels()[label].name},
                                              {"weight", weight}});
    }
    if (params.dedupe && !seen.insert(label).second) continue;
    prediction.labels.push_back(
        {space.labels()[label].name, weight, keywords[keyword]});
  }
  return prediction;
}

std::vector<Prediction> AssignCorpus(std::span<const KeywordSet> sets,
                                     const LabelSpace &space,
                                     const AssignmentParams &params) {
  std::vector<Prediction> out;
  out.reserve(sets.size());
  const std::vector<EmbeddingVector> labels = space.Embeddings();
  for (const KeywordSet &set : sets) {
    const CoverageMatrix matrix =
        ComputeCoverageMatrix(set.doc_id, set.Embeddings(), labels);
    out.push_back(Assign(matrix, space, set.Texts(), params));
  }
  return out;
}

void WritePredictions(std::span<const Prediction> predictions,
                      std::ostream &out) {
  for (const Prediction &p : predictions) {
    nlohmann::json labels = nlohmann::json::array();
    for (const PredictedLabel &l : p.labels) {
      labels.push_back({{"name", l.name}, {"weight", l.weight}, {"keyword", l.keyword}});
    }
    out << DumpJson({{"id", p.doc_id},
                     {"labels", std::move(labels)},
                     {"retained_entries", p.retained_entries}})
        << '\n';
  }
}

void WritePredictions(std::span<const Prediction> predictions,
                      const std::filesystem::path &path) {
  std::ostringstream buffer;
  WritePredictions(predictions, buffer);
  WriteTextFile(path, buffer.str());
}

std::vector<Prediction> ReadPredictions(std::istream &in,
                                        std::string_view source) {
  std::vector<Prediction> out;
  ForEachJsonLine(in, source, [&](const nlohmann::json &record, std::size_t line) {
    try {
      Prediction p;
      p.doc_id = record.at("id").get<std::string>();
      for (const auto &l : record.at("labels")) {
        p.labels.push_back({l.at("name").get<std::string>(),
                            l.value("weight", 0.0),
                            l.value("keyword", std::string())});
      }
      p.retained_entries = record.value("retained_entries", p.labels.size());
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                         std::to_string(line) +
                                         ": malformed prediction: " + e.what());
    }
  });
  return out;
}

std::vector<Prediction> ReadPredictions(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kNotFound,
                "predictions file '" + path.string() + "' not found");
  }
  return ReadPredictions(in, path.string());
}

}  // namespace labeler
