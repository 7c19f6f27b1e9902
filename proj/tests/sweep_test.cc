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

#include "labeler/sweep.h"

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.h"

namespace labeler {
namespace {

using testing::FixturePath;

class PlantedSweep : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    corpus_ = new Corpus(
        Ingest(FixturePath("planted_corpus.jsonl"), DefaultDomainStopwords()));
    providers_ = new Providers(MakeProviders(ProviderConfig{}));
    ClusterParams cluster;
    cluster.k = 4;
    auto generated = GenerateLabelSpace(*corpus_, ExtractionParams{}, cluster,
                                        *providers_);
    space_ = new LabelSpace(generated.space);
    sets_ = new std::vector<KeywordSet>(generated.keywords.sets);
    gold_ = new Gold(testing::PlantedGold(*space_));
  }
  static void TearDownTestSuite() {
    delete gold_;
    delete sets_;
    delete space_;
    delete providers_;
    delete corpus_;
  }

  static Corpus *corpus_;
  static Providers *providers_;
  static LabelSpace *space_;
  static std::vector<KeywordSet> *sets_;
  static Gold *gold_;
};

Corpus *PlantedSweep::corpus_ = nullptr;
Providers *PlantedSweep::providers_ = nullptr;
LabelSpace *PlantedSweep::space_ = nullptr;
std::vector<KeywordSet> *PlantedSweep::sets_ = nullptr;
Gold *PlantedSweep::gold_ = nullptr;

TEST_F(PlantedSweep, GoldCoversEveryDocument) {
  EXPECT_EQ(gold_->size(), corpus_->size());
}

TEST_F(PlantedSweep, KSweepHasOneRowPerK) {
  std::vector<std::size_t> ks;
  for (std::size_t k = 2; k <= 28; ++k) ks.push_back(k);
  const std::vector<std::uint64_t> seeds = {42};
  ClusterParams base;
  base.restarts = 2;
  const auto rows = SweepK(*sets_, base, seeds, ks, *providers_->embedder, 0);
  ASSERT_EQ(rows.size(), 27u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].k, i + 2);
    EXPECT_GE(rows[i].redundancy, -1.0);
    EXPECT_LE(rows[i].redundancy, 1.0 + 1e-12);
  }
  std::ostringstream a, b;
  WriteKSweepCsv(rows, a);
  const auto again = SweepK(*sets_, base, seeds, ks, *providers_->embedder, 1);
  WriteKSweepCsv(again, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, 6), "k,R,S\n");
}

TEST_F(PlantedSweep, CoverageNonDecreasingOverNestedPrefixes) {
  ClusterParams params;
  params.k = 12;
  const LabelSpace big = BuildLabelSpace(*sets_, params, *providers_->embedder);
  double previous = -2.0;
  for (std::size_t k = 1; k <= big.size(); ++k) {
    const double s = Coverage(*sets_, big.Prefix(k)).corpus_value;
    EXPECT_GE(s + kCoverageBoundSlack, previous) << k;
    previous = s;
  }
}

TEST_F(PlantedSweep, KSweepValidatesRange) {
  const std::vector<std::uint64_t> seeds = {1};
  const std::vector<std::size_t> bad = {1};
  const std::vector<std::size_t> huge = {100000};
  EXPECT_ERROR_CODE(SweepK(*sets_, ClusterParams{}, seeds, bad, *providers_->embedder),
                    ErrorCode::kPrecondition);
  EXPECT_ERROR_CODE(SweepK(*sets_, ClusterParams{}, seeds, huge, *providers_->embedder),
                    ErrorCode::kPrecondition);
}

TEST_F(PlantedSweep, ThresholdSweepComposesAssignAndEvaluate) {
  const std::vector<double> thresholds = {1, 2, 5, 10, 20};
  const auto rows = SweepThreshold(*sets_, *space_, *gold_, thresholds,
                                   UnlabeledPolicy::kExclude);
  ASSERT_EQ(rows.size(), thresholds.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto predictions =
        AssignCorpus(*sets_, *space_, AssignmentParams{thresholds[i], true});
    const auto direct = Evaluate(predictions, *gold_, UnlabeledPolicy::kExclude);
    EXPECT_EQ(rows[i].f1, direct.f1);
    EXPECT_EQ(rows[i].recall, direct.recall);
    if (i > 0) EXPECT_GE(rows[i].recall, rows[i - 1].recall);
  }
  // At T = 1 each document gets exactly one label.
  EXPECT_EQ(rows[0].precision, rows[0].recall);
  std::ostringstream csv;
  WriteThresholdCsv(rows, csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "T,precision,recall,f1");
}

TEST_F(PlantedSweep, KeywordSweepComposesExtractAssignEvaluate) {
  const std::vector<std::size_t> counts = {3, 5};
  const auto rows = SweepKeywords(*corpus_, ExtractionParams{}, counts, *space_,
                                  *gold_, 1.0, UnlabeledPolicy::kExclude,
                                  *providers_);
  ASSERT_EQ(rows.size(), 2u);
  // c = 5 with pool 10 is the configuration the space was built from.
  const auto predictions = AssignCorpus(*sets_, *space_, AssignmentParams{1.0, true});
  EXPECT_EQ(rows[1].f1,
            Evaluate(predictions, *gold_, UnlabeledPolicy::kExclude).f1);
  const std::vector<std::size_t> bad = {13};
  EXPECT_ERROR_CODE(SweepKeywords(*corpus_, ExtractionParams{}, bad, *space_, *gold_,
                                  1.0, UnlabeledPolicy::kExclude, *providers_),
                    ErrorCode::kInvalidArgument);
}

TEST_F(PlantedSweep, EchoAblationColumnsAreIdentical) {
  ProviderConfig config;
  config.metadata_endpoint = "mock-echo";
  const Providers echo = MakeProviders(config);
  const std::vector<double> thresholds = {1, 5, 10};
  const auto rows = AblateMetadata(*corpus_, ExtractionParams{}, *space_, *gold_,
                                   thresholds, UnlabeledPolicy::kExclude, echo);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto &row : rows) EXPECT_EQ(row.f1_with, row.f1_without);
  std::ostringstream csv;
  WriteAblationCsv(rows, csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "T,f1_with,f1_without");
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(FormatNumber(0.5), "0.5");
  EXPECT_EQ(FormatNumber(1.0), "1");
  EXPECT_EQ(std::stod(FormatNumber(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(Csv, KSweepLayouts) {
  const std::vector<KSweepRow> rows = {{2, 0.25, 0.5}, {3, 0.125, 0.75}};
  std::ostringstream all, r, s;
  WriteKSweepCsv(rows, all);
  WriteRedundancyCsv(rows, r);
  WriteCoverageCsv(rows, s);
  EXPECT_EQ(all.str(), "k,R,S\n2,0.25,0.5\n3,0.125,0.75\n");
  EXPECT_EQ(r.str(), "k,R\n2,0.25\n3,0.125\n");
  EXPECT_EQ(s.str(), "k,S\n2,0.5\n3,0.75\n");
}

}  // namespace
}  // namespace labeler
