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

#include "labeler/annotate.h"

#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "test_util.h"

namespace labeler {
namespace {

class AnnotateTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::vector<Document> docs;
    for (const char *id : {"a", "b", "c"}) {
      Document d;
      d.id = id;
      d.year = 2010;
      d.raw_text = d.clean_text = std::string("text of ") + id;
      docs.push_back(d);
    }
    corpus_ = Corpus(std::move(docs), {});
    space_ = LabelSpace({{"alpha", testing::Unit({1, 0}), 1},
                         {"beta", testing::Unit({0, 1}), 1}},
                        ClusterParams{});
    options_.annotator = "tester";
    options_.clock = [] { return std::string("2026-01-01T00:00:00Z"); };
  }

  AnnotateSummary Run(AnnotationStore &store, const std::string &input,
                      std::string *transcript = nullptr) {
    std::istringstream in(input);
    std::ostringstream out;
    auto summary = RunAnnotation(corpus_, space_, store, in, out, options_);
    if (transcript) *transcript = out.str();
    return summary;
  }

  testing::TempDir dir_;
  Corpus corpus_;
  LabelSpace space_;
  AnnotateOptions options_;
};

TEST_F(AnnotateTest, RecordsChoicesAndSkips) {
  AnnotationStore store(dir_ / "gold.jsonl");
  const auto summary = Run(store, "2\ns\n1\n");
  EXPECT_EQ(summary.labeled, 2u);
  EXPECT_EQ(summary.unlabeled, 1u);
  EXPECT_FALSE(summary.quit);
  const auto gold = store.GoldFor(space_.Id());
  EXPECT_EQ(gold.at("a"), "beta");
  EXPECT_EQ(gold.at("b"), kUnlabeled);
  EXPECT_EQ(gold.at("c"), "alpha");
  EXPECT_EQ(store.records()[0].annotator, "tester");
  EXPECT_EQ(store.records()[0].timestamp, "2026-01-01T00:00:00Z");
}

TEST_F(AnnotateTest, QuitThenResume) {
  {
    AnnotationStore store(dir_ / "gold.jsonl");
    const auto summary = Run(store, "1\nq\n");
    EXPECT_TRUE(summary.quit);
    EXPECT_EQ(summary.labeled, 1u);
  }
  AnnotationStore store(dir_ / "gold.jsonl");
  std::string transcript;
  const auto summary = Run(store, "2\n2\n", &transcript);
  EXPECT_EQ(summary.resumed, 1u);
  EXPECT_EQ(summary.labeled, 2u);
  EXPECT_NE(transcript.find("[1/2] b"), std::string::npos);
  EXPECT_EQ(transcript.find("] a ("), std::string::npos);
  EXPECT_EQ(store.GoldFor(space_.Id()).size(), 3u);
}

TEST_F(AnnotateTest, InvalidInputReprompts) {
  AnnotationStore store(dir_ / "gold.jsonl");
  std::string transcript;
  const auto summary = Run(store, "0\n3\nx\n 2 \n", &transcript);
  EXPECT_EQ(summary.labeled, 1u);
  EXPECT_TRUE(summary.quit);  // input ran out on the second document
  EXPECT_EQ(store.GoldFor(space_.Id()).at("a"), "beta");
  std::size_t warnings = 0;
  for (std::size_t pos = 0;
       (pos = transcript.find("Please enter a number", pos)) != std::string::npos;
       ++pos) {
    ++warnings;
  }
  EXPECT_EQ(warnings, 3u);
}

TEST_F(AnnotateTest, ShowsNumberedLabels) {
  AnnotationStore store(dir_ / "gold.jsonl");
  std::string transcript;
  Run(store, "q\n", &transcript);
  EXPECT_NE(transcript.find("  1. alpha\n  2. beta\n"), std::string::npos);
  EXPECT_NE(transcript.find("text of a"), std::string::npos);
}

TEST(UtcTimestamp, IsoFormat) {
  EXPECT_TRUE(std::regex_match(UtcTimestamp(),
                               std::regex(R"(\d{4}-\d\d-\d\dT\d\d:\d\d:\d\dZ)")));
}

}  // namespace
}  // namespace labeler
