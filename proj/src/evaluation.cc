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

#include "labeler/evaluation.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_map>

#include "labeler/error.h"
#include "labeler/io.h"

namespace labeler {

nlohmann::json Annotation::ToJson() const {
  return {{"space_id", space_id},
          {"doc_id", doc_id},
          {"label", label},
          {"annotator", annotator},
          {"timestamp", timestamp}};
}

Annotation Annotation::FromJson(const nlohmann::json &j) {
  Annotation a;
  a.space_id = j.at("space_id").get<std::string>();
  a.doc_id = j.at("doc_id").get<std::string>();
  a.label = j.at("label").get<std::string>();
  a.annotator = j.value("annotator", std::string());
  a.timestamp = j.value("timestamp", std::string());
  return a;
}

AnnotationStore::AnnotationStore(std::filesystem::path path)
    : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  const std::string source = path_.string();
  ForEachJsonLine(in, source, [&](const nlohmann::json &record, std::size_t line) {
    try {
      records_.push_back(Annotation::FromJson(record));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kParse, source + ":" + std::to_string(line) +
                                         ": malformed annotation: " + e.what());
    }
  });
}

void AnnotationStore::Append(const Annotation &annotation) {
  std::ofstream out(path_, std::ios::app);
  out << DumpJson(annotation.ToJson()) << '\n';
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIo,
                "cannot append to annotation store '" + path_.string() + "'");
  }
  records_.push_back(annotation);
}

bool AnnotationStore::Contains(std::string_view space_id,
                               std::string_view doc_id) const {
  return std::any_of(records_.begin(), records_.end(), [&](const Annotation &a) {
    return a.space_id == space_id && a.doc_id == doc_id;
  });
}

std::vector<std::string> AnnotationStore::SpaceIds() const {
  std::vector<std::string> out;
  for (const Annotation &a : records_) {
    if (std::find(out.begin(), out.end(), a.space_id) == out.end()) {
      out.push_back(a.space_id);
    }
  }
  return out;
}

std::map<std::string, std::string> AnnotationStore::GoldFor(
    std::string_view space_id) const {
  std::map<std::string, std::string> gold;
  for (const Annotation &a : records_) {
    if (a.space_id == space_id) gold[a.doc_id] = a.label;
  }
  return gold;
}

UnlabeledPolicy ParseUnlabeledPolicy(std::string_view name) {
  if (name == "exclude") return UnlabeledPolicy::kExclude;
  if (name == "count-as-miss") return UnlabeledPolicy::kCountAsMiss;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown unlabeled policy '" + std::string(name) +
                  "' (expected exclude or count-as-miss)");
}

std::string_view UnlabeledPolicyName(UnlabeledPolicy policy) {
  return policy == UnlabeledPolicy::kExclude ? "exclude" : "count-as-miss";
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json j{{"precision", precision},
                   {"recall", recall},
                   {"f1", f1},
                   {"counts",
                    {{"true_positives", true_positives},
                     {"predicted_total", predicted_total},
                     {"gold_total", gold_total},
                     {"unlabeled_excluded", unlabeled_excluded}}}};
  j["threshold_percent"] =
      threshold_percent ? nlohmann::json(*threshold_percent) : nlohmann::json(nullptr);
  return j;
}

EvalReport Evaluate(std::span<const Prediction> predictions,
                    const std::map<std::string, std::string> &gold,
                    UnlabeledPolicy policy,
                    std::optional<double> threshold_percent) {
  std::unordered_map<std::string_view, const Prediction *> by_id;
  for (const Prediction &p : predictions) by_id.emplace(p.doc_id, &p);

  EvalReport report;
  report.threshold_percent = threshold_percent;
  for (const auto &[doc_id, label] : gold) {
    auto it = by_id.find(doc_id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kNotFound,
                  "no prediction for annotated document '" + doc_id + "'");
    }
    std::set<std::string_view> predicted;
    for (const PredictedLabel &l : it->second->labels) predicted.insert(l.name);
    if (label == kUnlabeled) {
      if (policy == UnlabeledPolicy::kExclude) {
        ++report.unlabeled_excluded;
        continue;
      }
      ++report.gold_total;
      report.predicted_total += predicted.size();
      continue;
    }
    ++report.gold_total;
    report.predicted_total += predicted.size();
    if (predicted.contains(label)) ++report.true_positives;
  }
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  report.precision = ratio(report.true_positives, report.predicted_total);
  report.recall = ratio(report.true_positives, report.gold_total);
  const double sum = report.precision + report.recall;
  if (report.precision == report.recall) {
    // The harmonic mean of equal values, without round-off.
    report.f1 = report.precision;
  } else {
    report.f1 = 2.0 * report.precision * report.recall / sum;
  }
  return report;
}

}  // namespace labeler
