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

#ifndef LABELER_EVALUATION_H_
#define LABELER_EVALUATION_H_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "labeler/assigner.h"

namespace labeler {

// Gold label recorded when no presented label fits the document.
inline constexpr std::string_view kUnlabeled = "UNLABELED";

struct Annotation {
  std::string space_id;
  std::string doc_id;
  // A label name or kUnlabeled.
  std::string label;
  std::string annotator;
  // ISO 8601 UTC.
  std::string timestamp;

  bool unlabeled() const { return label == kUnlabeled; }
  nlohmann::json ToJson() const;
  static Annotation FromJson(const nlohmann::json &j);
};

// Append-only JSONL store keyed by (space id, doc id). The latest record for
// a key wins when read back.
class AnnotationStore {
 public:
  // A missing file is an empty store; it is created on the first Append.
  explicit AnnotationStore(std::filesystem::path path);

  // Writes and flushes one record. Throws kIo on failure.
  void Append(const Annotation &annotation);

  const std::vector<Annotation> &records() const { return records_; }
  bool Contains(std::string_view space_id, std::string_view doc_id) const;
  std::vector<std::string> SpaceIds() const;
  // doc id -> gold label for one space.
  std::map<std::string, std::string> GoldFor(std::string_view space_id) const;

 private:
  std::filesystem::path path_;
  std::vector<Annotation> records_;
};

enum class UnlabeledPolicy {
  // UNLABELED documents contribute nothing and are counted separately.
  kExclude,
  // UNLABELED documents count toward gold_total and their predictions
  // toward predicted_total, with no possible true positive.
  kCountAsMiss,
};

UnlabeledPolicy ParseUnlabeledPolicy(std::string_view name);
std::string_view UnlabeledPolicyName(UnlabeledPolicy policy);

struct EvalReport {
  std::optional<double> threshold_percent;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t predicted_total = 0;
  std::size_t gold_total = 0;
  std::size_t unlabeled_excluded = 0;

  nlohmann::json ToJson() const;
};

// Micro-averaged precision, recall and F1 over the annotated documents.
// A zero denominator yields 0. Throws kNotFound when an annotated document
// has no prediction.
EvalReport Evaluate(std::span<const Prediction> predictions,
                    const std::map<std::string, std::string> &gold,
                    UnlabeledPolicy policy = UnlabeledPolicy::kExclude,
                    std::optional<double> threshold_percent = std::nullopt);

}  // namespace labeler

#endif  // LABELER_EVALUATION_H_
