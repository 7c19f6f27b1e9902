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

#include "labeler/labelspace.h"

#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <set>

#include "labeler/io.h"
#include "test_util.h"

namespace labeler {
namespace {

using testing::FixturePath;
using testing::Unit;

std::vector<double> Raw(const EmbeddingVector &v) {
  return {v.values().begin(), v.values().end()};
}

TEST(NameClusters, NearestToCentroidDirectionWins) {
  MockEmbedder embedder;
  const std::vector<PooledKeyword> pooled = {
      {"east", Unit({1.0, 0.05})},
      {"east north", Unit({1.0, 0.4})},
      {"north", Unit({0.02, 1.0})},
      {"north west", Unit({-0.3, 1.0})},
      {"west", Unit({-1.0, 0.0})}};
  const std::vector<std::size_t> assignments = {0, 0, 1, 1, 2};
  const std::vector<std::vector<double>> centroids = {{2.0, 0.1}, {0.0, 5.0}, {-1.0, 0.0}};
  const auto labels = NameClusters(pooled, assignments, centroids, embedder);
  ASSERT_EQ(labels.size(), 3u);
  EXPECT_EQ(labels[0].name, "east");
  EXPECT_EQ(labels[1].name, "north");
  EXPECT_EQ(labels[2].name, "west");  // singleton
  EXPECT_EQ(labels[0].member_count, 2u);
  EXPECT_EQ(labels[2].member_count, 1u);
  EXPECT_EQ(labels[1].embedding, embedder.EmbedOne("north"));
}

TEST(NameClusters, CollisionTakesNextNearestMember) {
  MockEmbedder embedder;
  const std::vector<PooledKeyword> pooled = {
      {"lidar", Unit({1.0, 0.0})},
      {"lidar", Unit({0.0, 1.0})},
      {"canopy", Unit({0.2, 1.0})}};
  const std::vector<std::size_t> assignments = {0, 1, 1};
  const std::vector<std::vector<double>> centroids = {{1, 0}, {0, 1}};
  const auto labels = NameClusters(pooled, assignments, centroids, embedder);
  EXPECT_EQ(labels[0].name, "lidar");
  EXPECT_EQ(labels[1].name, "canopy");
}

TEST(NameClusters, CollisionBorrowsNearestUnusedKeywordFromPool) {
  MockEmbedder embedder;
  const std::vector<PooledKeyword> pooled = {
      {"lidar", Unit({1.0, 0.0})},
      {"forest", Unit({0.9, 0.3})},
      {"laser", Unit({-0.2, 1.0})},
      {"lidar", Unit({0.0, 1.0})}};
  const std::vector<std::size_t> assignments = {0, 0, 0, 1};
  const std::vector<std::vector<double>> centroids = {{1, 0.1}, {0, 1}};
  const auto labels = NameClusters(pooled, assignments, centroids, embedder);
  EXPECT_EQ(labels[0].name, "lidar");
  // Cluster 1 only holds "lidar"; "laser" is the unused text nearest to it.
  EXPECT_EQ(labels[1].name, "laser");
}

TEST(NameClusters, SuffixOnlyWhenEveryTextIsTaken) {
  MockEmbedder embedder;
  const std::vector<PooledKeyword> pooled = {
      {"lidar", Unit({1.0, 0.0})},
      {"lidar", Unit({0.0, 1.0})},
      {"canopy", Unit({0.2, 1.0})},
      {"lidar", Unit({-1.0, 0.0})}};
  const std::vector<std::size_t> assignments = {0, 1, 1, 2};
  const std::vector<std::vector<double>> centroids = {{1, 0}, {0, 1}, {-1, 0}};
  const auto labels = NameClusters(pooled, assignments, centroids, embedder);
  EXPECT_EQ(labels[0].name, "lidar");
  EXPECT_EQ(labels[1].name, "canopy");
  EXPECT_EQ(labels[2].name, "lidar (3)");
}

TEST(NameClusters, RejectsEmptyClustersAndBadAssignments) {
  MockEmbedder embedder;
  const std::vector<PooledKeyword> pooled = {{"a", Unit({1.0, 0.0})}};
  const std::vector<std::vector<double>> two = {{1, 0}, {0, 1}};
  const std::vector<std::size_t> ok = {0};
  const std::vector<std::size_t> bad = {5};
  EXPECT_ERROR_CODE(NameClusters(pooled, ok, two, embedder), ErrorCode::kPrecondition);
  EXPECT_ERROR_CODE(NameClusters(pooled, bad, two, embedder),
                    ErrorCode::kInvalidArgument);
}

std::vector<KeywordSet> TenKeywordSets(MockEmbedder &embedder) {
  const std::vector<std::vector<std::string>> docs = {
      {"ion thruster", "grid erosion", "hall thruster", "xenon flow", "cathode"},
      {"canopy height", "forest lidar", "boreal forest", "ion grid", "laser ranging"}};
  std::vector<KeywordSet> sets;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    KeywordSet set;
    set.doc_id = "doc" + std::to_string(d);
    for (const auto &text : docs[d]) {
      set.keywords.push_back({text, 1.0, "", embedder.EmbedOne(text)});
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

TEST(BuildLabelSpace, MatchesBruteForceClusteringAndNaming) {
  MockEmbedder embedder;
  const auto sets = TenKeywordSets(embedder);
  const auto pooled = PoolKeywords(sets);
  ASSERT_EQ(pooled.size(), 10u);
  std::vector<std::vector<double>> points;
  for (const auto &p : pooled) points.push_back(Raw(p.embedding));

  // Exhaustive search over all 3^10 labelings.
  const std::size_t n = points.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> labeling(n, 0), best_labeling;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    std::set<std::size_t> used;
    for (std::size_t i = 0; i < n; ++i) {
      labeling[i] = rest % 3;
      rest /= 3;
      used.insert(labeling[i]);
    }
    if (used.size() != 3) continue;
    const double w = Wcss(points, labeling, 3);
    if (w < best - 1e-12) {
      best = w;
      best_labeling = labeling;
    }
  }

  ClusterParams params;
  params.k = 3;
  const KMeansResult km = KMeans(points, params);
  EXPECT_NEAR(km.wcss, best, 1e-9);

  // Expected names from the clustering found: per cluster, the member with
  // the highest cosine to the centroid.
  std::vector<std::string> expected(3);
  for (std::size_t c = 0; c < 3; ++c) {
    double top = -2.0;
    const double norm = Norm(km.centroids[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (km.assignments[i] != c) continue;
      const double sim = Dot(points[i], km.centroids[c]) / norm;
      if (sim > top) {
        top = sim;
        expected[c] = pooled[i].text;
      }
    }
  }
  const LabelSpace space = BuildLabelSpace(sets, params, embedder);
  EXPECT_EQ(space.Names(), expected);
}

TEST(BuildLabelSpace, SingleClusterAndTooFewPoints) {
  MockEmbedder embedder;
  const auto sets = TenKeywordSets(embedder);
  ClusterParams params;
  params.k = 1;
  const LabelSpace one = BuildLabelSpace(sets, params, embedder);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.labels()[0].member_count, 10u);
  params.k = 11;
  EXPECT_ERROR_CODE(BuildLabelSpace(sets, params, embedder), ErrorCode::kPrecondition);
}

TEST(BuildLabelSpace, PlantedTopicsAreRecovered) {
  const Corpus corpus =
      Ingest(FixturePath("planted_corpus.jsonl"), DefaultDomainStopwords());
  const auto truth = ReadJsonFile(FixturePath("planted_truth.json"));
  ExtractionParams extraction;
  ClusterParams cluster;
  cluster.k = 4;
  const Providers providers = MakeProviders(ProviderConfig{});
  const GeneratedSpace generated =
      GenerateLabelSpace(corpus, extraction, cluster, providers);
  EXPECT_TRUE(generated.keywords.skipped.empty());

  std::set<std::string> topics;
  for (const Label &label : generated.space.labels()) {
    std::string topic;
    for (const auto &[name, words] : truth.at("vocabularies").items()) {
      for (const auto &w : words) {
        if (label.name.find(w.get<std::string>()) != std::string::npos) topic = name;
      }
    }
    EXPECT_FALSE(topic.empty()) << label.name;
    topics.insert(topic);
  }
  EXPECT_EQ(topics.size(), 4u);
}

TEST(LabelSpace, ConstructorValidates) {
  const ClusterParams params;
  EXPECT_ERROR_CODE(LabelSpace({}, params), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(LabelSpace({{"", Unit({1, 0}), 1}}, params),
                    ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(LabelSpace({{"a", Unit({1, 0}), 1}, {"a", Unit({0, 1}), 1}}, params),
                    ErrorCode::kDuplicate);
  EXPECT_ERROR_CODE(LabelSpace({{"a", Unit({1, 0}), 1}, {"b", Unit({0, 1, 0}), 1}}, params),
                    ErrorCode::kDimensionMismatch);
}

TEST(LabelSpace, LookupAndPrefix) {
  const LabelSpace space({{"a", Unit({1, 0}), 3}, {"b", Unit({0, 1}), 2},
                          {"c", Unit({1, 1}), 1}},
                         ClusterParams{});
  EXPECT_EQ(space.IndexOf("b"), 1u);
  EXPECT_EQ(space.IndexOf("z"), space.size());
  EXPECT_EQ(space.Prefix(2).Names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_ERROR_CODE(space.Prefix(0), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(space.Prefix(4), ErrorCode::kInvalidArgument);
  EXPECT_NE(space.Prefix(2).Id(), space.Id());
  EXPECT_EQ(space.dim(), 2u);
}

TEST(LabelSpace, JsonRoundTripIsExact) {
  testing::TempDir dir;
  MockEmbedder embedder;
  ClusterParams params;
  params.k = 3;
  const LabelSpace space =
      BuildLabelSpace(TenKeywordSets(embedder), params, embedder, {{"note", "x"}});
  space.Save(dir / "space.json");
  const LabelSpace back = LabelSpace::Load(dir / "space.json");
  EXPECT_EQ(back.Names(), space.Names());
  EXPECT_EQ(back.Embeddings(), space.Embeddings());
  EXPECT_EQ(back.Id(), space.Id());
  EXPECT_EQ(back.params().k, 3u);
  EXPECT_EQ(back.provenance().at("note"), "x");
  back.Save(dir / "again.json");
  EXPECT_EQ(ReadTextFile(dir / "space.json"), ReadTextFile(dir / "again.json"));
}

TEST(LabelSpace, RebuildIsBitIdentical) {
  MockEmbedder embedder;
  ClusterParams params;
  params.k = 4;
  const auto sets = TenKeywordSets(embedder);
  const LabelSpace a = BuildLabelSpace(sets, params, embedder);
  const LabelSpace b = BuildLabelSpace(sets, params, embedder);
  EXPECT_EQ(DumpJson(a.ToJson()), DumpJson(b.ToJson()));
  EXPECT_EQ(a.Id(), b.Id());
}

}  // namespace
}  // namespace labeler
