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

#include "labeler/providers.h"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "labeler/io.h"
#include "test_util.h"

namespace labeler {
namespace {

using testing::TempDir;

// Independent re-derivation of the documented mock scheme for one clause of
// lowercase alphanumeric words.
std::vector<double> OracleCounts(const std::vector<std::string> &words,
                                 std::size_t dim) {
  auto fnv = [](const std::string &s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    return h;
  };
  std::vector<double> v(dim, 0.0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    v[fnv("u:" + words[i]) % dim] += 1.0;
    if (i + 1 < words.size()) v[fnv("b:" + words[i] + " " + words[i + 1]) % dim] += 0.5;
  }
  return v;
}

double OracleCosine(const std::vector<double> &a, const std::vector<double> &b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

TEST(MockEmbedder, UnitNormAndDimension) {
  MockEmbedder embedder;
  for (const std::string text : {"a", "lidar canopy height", "x y z. (w)"}) {
    const EmbeddingVector v = embedder.EmbedOne(text);
    EXPECT_EQ(v.dim(), 768u);
    EXPECT_NEAR(Norm(v.values()), 1.0, 1e-12);
  }
}

TEST(MockEmbedder, CountsMatchDocumentedScheme) {
  MockEmbedder embedder;
  EXPECT_EQ(embedder.RawCounts("Ion thruster grid"),
            OracleCounts({"ion", "thruster", "grid"}, 768));
}

TEST(MockEmbedder, SharedTokensBeatDisjointTokens) {
  const std::vector<std::string> base = {"ion", "thruster", "grid", "erosion",
                                         "carbon"};
  const std::vector<std::string> similar = {"ion", "thruster", "grid", "erosion",
                                            "model"};
  const std::vector<std::string> disjoint = {"lidar", "canopy", "height",
                                             "forest", "plot"};
  const double close = OracleCosine(OracleCounts(base, 768), OracleCounts(similar, 768));
  const double far = OracleCosine(OracleCounts(base, 768), OracleCounts(disjoint, 768));
  ASSERT_GT(close, far);

  MockEmbedder embedder;
  const auto a = embedder.EmbedOne("ion thruster grid erosion carbon");
  const auto b = embedder.EmbedOne("ion thruster grid erosion model");
  const auto c = embedder.EmbedOne("lidar canopy height forest plot");
  EXPECT_NEAR(a.Cosine(b), close, 1e-12);
  EXPECT_NEAR(a.Cosine(c), far, 1e-12);
  EXPECT_GT(a.Cosine(b), a.Cosine(c));
}

TEST(MockEmbedder, ClausePunctuationBreaksBigrams) {
  MockEmbedder embedder;
  auto joined = embedder.RawCounts("alpha beta");
  auto split = embedder.RawCounts("alpha, beta");
  EXPECT_NE(joined, split);
  auto expected = OracleCounts({"alpha"}, 768);
  const auto beta = OracleCounts({"beta"}, 768);
  for (std::size_t i = 0; i < expected.size(); ++i) expected[i] += beta[i];
  EXPECT_EQ(split, expected);
}

TEST(MockEmbedder, EchoConcatenationIsANoOp) {
  MockEmbedder embedder;
  EXPECT_EQ(embedder.EmbedOne("ion thruster: ion thruster"),
            embedder.EmbedOne("ion thruster"));
}

TEST(MockEmbedder, RejectsEmptyAndTokenlessText) {
  MockEmbedder embedder;
  EXPECT_ERROR_CODE(embedder.EmbedOne(""), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(embedder.EmbedOne("..."), ErrorCode::kInvalidArgument);
}

TEST(MockEmbedder, PreservesCardinalityAndOrder) {
  MockEmbedder embedder;
  const std::vector<std::string> texts = {"a b", "c", "a b", "d e f"};
  const auto out = embedder.Embed(texts);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0], out[2]);
  EXPECT_EQ(out[1], embedder.EmbedOne("c"));
}

TEST(MockMetadata, OneRecordPerKeywordInOrder) {
  MockMetadataProvider provider;
  const std::vector<std::string> keywords = {"lidar", "canopy height", "laser",
                                             "detector", "forest"};
  const auto records = provider.Generate(
      "A compact lidar measures canopy height in a forest. The laser and "
      "detector are small.",
      keywords);
  ASSERT_EQ(records.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(records[i].keyword, keywords[i]);
    EXPECT_FALSE(records[i].metadata_text.empty());
  }
}

TEST(MockMetadata, ContextIsDeterministicAndFromTheAbstract) {
  MockMetadataProvider provider;
  const std::string abstract =
      "Airborne lidar maps canopy structure over boreal forest plots. "
      "Lidar returns estimate biomass. Unrelated thermal sentence here.";
  const std::vector<std::string> keywords = {"lidar"};
  const auto a = provider.Generate(abstract, keywords);
  const auto b = provider.Generate(abstract, keywords);
  EXPECT_EQ(a[0].metadata_text, b[0].metadata_text);
  // Frequency ties keep first appearance; own words and stopwords excluded.
  EXPECT_EQ(a[0].metadata_text,
            "airborne maps canopy structure boreal forest plots returns");
}

TEST(MockMetadata, FallsBackToKeyword) {
  MockMetadataProvider provider;
  const std::vector<std::string> keywords = {"ion"};
  EXPECT_EQ(provider.Generate("ion of the.", keywords)[0].metadata_text, "ion");
}

TEST(MockMetadata, EchoMode) {
  MockMetadataProvider provider(MockMetadataProvider::Mode::kEcho);
  const std::vector<std::string> keywords = {"arc jet"};
  EXPECT_EQ(provider.Generate("some abstract", keywords)[0].metadata_text,
            "arc jet");
}

TEST(MockMetadata, RejectsEmptyInputs) {
  MockMetadataProvider provider;
  const std::vector<std::string> none;
  const std::vector<std::string> one = {"x"};
  EXPECT_ERROR_CODE(provider.Generate("text", none), ErrorCode::kInvalidArgument);
  EXPECT_ERROR_CODE(provider.Generate("", one), ErrorCode::kInvalidArgument);
}

TEST(Concat, KeywordSeparatorMetadata) {
  EXPECT_EQ(ConcatForEmbedding({"lidar", "a ranging technique"}),
            "lidar: a ranging technique");
}

TEST(Concat, MetadataDisabledGivesKeyword) {
  EXPECT_EQ(ConcatForEmbedding({"lidar", "a ranging technique"}, false), "lidar");
  EXPECT_EQ(ConcatForEmbedding({"lidar", ""}, false), "lidar");
}

TEST(Concat, EmptyMetadataIsAnError) {
  EXPECT_ERROR_CODE(ConcatForEmbedding({"lidar", ""}), ErrorCode::kInvalidArgument);
}

TEST(Prompt, CarriesInstructionAbstractAndKeywords) {
  const std::vector<std::string> keywords = {"lidar", "canopy"};
  const std::string prompt = FormatMetadataPrompt("The abstract.", keywords);
  EXPECT_EQ(prompt.rfind(std::string(kMetadataPromptTemplate), 0), 0u);
  EXPECT_NE(prompt.find("Abstract:\nThe abstract."), std::string::npos);
  EXPECT_NE(prompt.find("- lidar\n- canopy\n"), std::string::npos);
}

// Counts calls to its inner mock.
class CountingEmbedder : public Embedder {
 public:
  std::vector<EmbeddingVector> Embed(std::span<const std::string> texts) override {
    calls += texts.size();
    return inner.Embed(texts);
  }
  std::string identity() const override { return inner.identity(); }
  std::size_t dimension() const override { return inner.dimension(); }
  MockEmbedder inner;
  std::atomic<std::size_t> calls{0};
};

TEST(Cache, RepeatedTextIsBitIdenticalAndHits) {
  auto inner = std::make_shared<CountingEmbedder>();
  CachingEmbedder cache(inner);
  const auto a = cache.EmbedOne("a");
  const auto b = cache.EmbedOne("a");
  EXPECT_EQ(a, b);
  EXPECT_EQ(inner->calls.load(), 1u);
  EXPECT_EQ(cache.hits(), 1u);
  EXPECT_EQ(cache.misses(), 1u);
}

TEST(Cache, DuplicateTextsInOneBatchEmbedOnce) {
  auto inner = std::make_shared<CountingEmbedder>();
  CachingEmbedder cache(inner);
  const std::vector<std::string> texts = {"x", "y", "x"};
  const auto out = cache.Embed(texts);
  EXPECT_EQ(out[0], out[2]);
  EXPECT_EQ(inner->calls.load(), 2u);
}

TEST(Cache, PersistReloadRoundTripIsBitIdentical) {
  TempDir dir;
  const auto path = dir / "cache.jsonl";
  const std::vector<std::string> texts = {"lidar: ranging", "ion thruster",
                                          "arc jet: heating test"};
  std::vector<EmbeddingVector> first;
  {
    CachingEmbedder cache(std::make_shared<MockEmbedder>(), path);
    first = cache.Embed(texts);
  }
  auto inner = std::make_shared<CountingEmbedder>();
  CachingEmbedder reloaded(inner, path);
  EXPECT_EQ(reloaded.size(), 3u);
  EXPECT_EQ(reloaded.Embed(texts), first);
  EXPECT_EQ(inner->calls.load(), 0u);
}

TEST(Cache, KeyedByProviderIdentity) {
  TempDir dir;
  const auto path = dir / "cache.jsonl";
  {
    CachingEmbedder cache(std::make_shared<MockEmbedder>(768), path);
    cache.EmbedOne("text");
  }
  CachingEmbedder other(std::make_shared<MockEmbedder>(16), path);
  EXPECT_EQ(other.EmbedOne("text").dim(), 16u);
}

TEST(Cache, ConcurrentCallsAgree) {
  auto inner = std::make_shared<CountingEmbedder>();
  CachingEmbedder cache(inner);
  std::vector<std::vector<EmbeddingVector>> results(8);
  std::vector<std::thread> threads;
  const std::vector<std::string> texts = {"p", "q", "r", "s"};
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] { results[t] = cache.Embed(texts); });
  }
  for (auto &t : threads) t.join();
  for (const auto &r : results) EXPECT_EQ(r, results[0]);
}

TEST(Config, Validation) {
  ProviderConfig config;
  EXPECT_NO_THROW(config.Validate());
  config.timeout = std::chrono::milliseconds(0);
  EXPECT_ERROR_CODE(config.Validate(), ErrorCode::kInvalidArgument);
  config = ProviderConfig{};
  config.retry_count = -1;
  EXPECT_ERROR_CODE(config.Validate(), ErrorCode::kInvalidArgument);
}

TEST(Config, MakeProvidersMock) {
  ProviderConfig config;
  config.metadata_endpoint = "mock-echo";
  const Providers providers = MakeProviders(config);
  EXPECT_EQ(providers.embedder->identity(), "mock-hash-v1/768");
  EXPECT_EQ(providers.metadata->identity(), "mock-echo-v1");
}

}  // namespace
}  // namespace labeler
