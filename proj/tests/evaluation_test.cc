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

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "test_util.h"

namespace labeler {
namespace {

Prediction Pred(std::string id, std::vector<std::string> names) {
  Prediction p;
  p.doc_id = std::move(id);
  for (auto &n : names) p.labels.push_back({std::move(n), 0.5, "kw"});
  return p;
}

TEST(Evaluate, PerfectPredictions) {
  const std::vector<Prediction> preds = {Pred("a", {"X"}), Pred("b", {"Y"})};
  const auto r = Evaluate(preds, {{"a", "X"}, {"b", "Y"}});
  EXPECT_EQ(r.precision, 1.0);
  EXPECT_EQ(r.recall, 1.0);
  EXPECT_EQ(r.f1, 1.0);
}

TEST(Evaluate, TwoDocumentExample) {
  const std::vector<Prediction> preds = {Pred("a", {"A", "B"}), Pred("b", {"C"})};
  const auto r = Evaluate(preds, {{"a", "A"}, {"b", "D"}});
  EXPECT_EQ(r.true_positives, 1u);
  EXPECT_EQ(r.predicted_total, 3u);
  EXPECT_EQ(r.gold_total, 2u);
  EXPECT_NEAR(r.precision, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.recall, 0.5, 1e-15);
  EXPECT_NEAR(r.f1, 0.4, 1e-15);
}

TEST(Evaluate, SingleLabelPredictionsGiveEqualMetrics) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Prediction> preds;
    std::map<std::string, std::string> gold;
    const int n = 1 + static_cast<int>(gen() % 30);
    for (int i = 0; i < n; ++i) {
      const std::string id = "d" + std::to_string(i);
      preds.push_back(Pred(id, {"L" + std::to_string(gen() % 4)}));
      gold[id] = "L" + std::to_string(gen() % 4);
    }
    const auto r = Evaluate(preds, gold);
    EXPECT_EQ(r.precision, r.recall);
    EXPECT_EQ(r.f1, r.precision);
  }
}

TEST(Evaluate, UnlabeledPolicies) {
  const std::vector<Prediction> preds = {Pred("a", {"A"}), Pred("b", {"B", "C"})};
  const std::map<std::string, std::string> gold = {{"a", "A"},
                                                   {"b", std::string(kUnlabeled)}};
  const auto excluded = Evaluate(preds, gold, UnlabeledPolicy::kExclude);
  EXPECT_EQ(excluded.unlabeled_excluded, 1u);
  EXPECT_EQ(excluded.precision, 1.0);
  EXPECT_EQ(excluded.recall, 1.0);
  const auto missed = Evaluate(preds, gold, UnlabeledPolicy::kCountAsMiss);
  EXPECT_EQ(missed.gold_total, 2u);
  EXPECT_EQ(missed.predicted_total, 3u);
  EXPECT_NEAR(missed.precision, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(missed.recall, 0.5);
}

TEST(Evaluate, EmptyGoldGivesZeros) {
  const std::vector<Prediction> preds = {Pred("a", {"A"})};
  const auto r = Evaluate(preds, {});
  EXPECT_EQ(r.f1, 0.0);
  EXPECT_EQ(r.gold_total, 0u);
}

TEST(Evaluate, MissingPredictionIsAnError) {
  const std::vector<Prediction> preds = {Pred("a", {"A"})};
  EXPECT_ERROR_CODE(Evaluate(preds, {{"zzz", "A"}}), ErrorCode::kNotFound);
}

TEST(Evaluate, ReportJson) {
  const std::vector<Prediction> preds = {Pred("a", {"A"})};
  const auto j = Evaluate(preds, {{"a", "A"}}, UnlabeledPolicy::kExclude, 5.0).ToJson();
  EXPECT_EQ(j.at("f1"), 1.0);
  EXPECT_EQ(j.at("threshold_percent"), 5.0);
}

TEST(UnlabeledPolicy, ParseAndName) {
  EXPECT_EQ(ParseUnlabeledPolicy("exclude"), UnlabeledPolicy::kExclude);
  EXPECT_EQ(ParseUnlabeledPolicy("count-as-miss"), UnlabeledPolicy::kCountAsMiss);
  EXPECT_EQ(UnlabeledPolicyName(UnlabeledPolicy::kCountAsMiss), "count-as-miss");
  EXPECT_ERROR_CODE(ParseUnlabeledPolicy("drop"), ErrorCode::kInvalidArgument);
}

TEST(AnnotationStore, PersistsAndResumes) {
  testing::TempDir dir;
  const auto path = dir / "gold.jsonl";
  {
    AnnotationStore store(path);
    store.Append({"s1", "a", "X", "ann", "2026-01-01T00:00:00Z"});
    store.Append({"s1", "b", std::string(kUnlabeled), "ann", "2026-01-01T00:00:01Z"});
    store.Append({"s2", "a", "Q", "ann", "2026-01-01T00:00:02Z"});
    store.Append({"s1", "a", "Y", "ann", "2026-01-01T00:00:03Z"});
  }
  AnnotationStore reopened(path);
  EXPECT_EQ(reopened.records().size(), 4u);
  EXPECT_TRUE(reopened.Contains("s1", "b"));
  EXPECT_FALSE(reopened.Contains("s2", "b"));
  EXPECT_EQ(reopened.SpaceIds(), (std::vector<std::string>{"s1", "s2"}));
  const auto gold = reopened.GoldFor("s1");
  EXPECT_EQ(gold.at("a"), "Y");
  EXPECT_EQ(gold.at("b"), kUnlabeled);
  EXPECT_EQ(reopened.GoldFor("s2").size(), 1u);
}

TEST(AnnotationStore, CorruptLineIsAParseError) {
  testing::TempDir dir;
  const auto path = dir / "gold.jsonl";
  std::ofstream(path) << "{not json\n";
  EXPECT_ERROR_CODE(AnnotationStore{path}, ErrorCode::kParse);
}

}  // namespace
}  // namespace labeler
