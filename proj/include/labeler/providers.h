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

#ifndef LABELER_PROVIDERS_H_
#define LABELER_PROVIDERS_H_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "labeler/embedding.h"

namespace labeler {

// A keyword with its document-specific contextual definition.
struct MetadataRecord {
  std::string keyword;
  std::string metadata_text;
};

// Sentence-embedding provider. Implementations must be safe for concurrent
// calls and return one unit vector per input text, in input order.
class Embedder {
 public:
  virtual ~Embedder() = default;

  // Throws kInvalidArgument for empty texts, kProvider when the backend
  // fails, kDimensionMismatch when it returns the wrong dimension.
  virtual std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) = 0;

  EmbeddingVector EmbedOne(const std::string &text);

  // Stable description used in cache keys and provenance.
  virtual std::string identity() const = 0;
  virtual std::size_t dimension() const = 0;
};

// Keyword metadata provider. Returns exactly one record per keyword, in
// keyword order, each with non-empty metadata_text.
class MetadataProvider {
 public:
  virtual ~MetadataProvider() = default;

  virtual std::vector<MetadataRecord> Generate(
      std::string_view abstract, std::span<const std::string> keywords) = 0;

  virtual std::string identity() const = 0;
};

// Offline embedder; a pure function of its input. Each text is lowercased
// and split into tokens (maximal runs of ASCII letters/digits or non-ASCII
// bytes). Every token adds 1.0 to bin FNV-1a("u:" + token) mod dim. Adjacent
// tokens within one clause (clauses end at . , ; : ! ? ( ) [ ] { } " or a
// newline) add 0.5 to bin FNV-1a("b:" + left + " " + right) mod dim. The
// count vector is then normalized. Texts sharing tokens therefore have
// correlated embeddings and token-disjoint texts are near-orthogonal.
class MockEmbedder : public Embedder {
 public:
  static constexpr double kUnigramWeight = 1.0;
  static constexpr double kBigramWeight = 0.5;

  explicit MockEmbedder(std::size_t dim = kEmbeddingDim) : dim_(dim) {}

  std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) override;
  std::string identity() const override;
  std::size_t dimension() const override { return dim_; }

  // Unnormalized bin counts; exposed for tests.
  std::vector<double> RawCounts(std::string_view text) const;

 private:
  std::size_t dim_;
};

// Offline metadata provider.
//
// kContext: the metadata for a keyword is built from the abstract sentences
// that contain the keyword phrase (or, failing that, any of its words, or
// failing that, the whole abstract). Their words, minus the keyword's own
// words, English stopwords and words under three characters, are ranked by
// frequency (ties by first appearance) and the top eight are joined with
// spaces. If nothing qualifies the keyword itself is returned.
//
// kEcho: the metadata is the keyword itself. Under MockEmbedder the
// concatenation "kw: kw" embeds identically to "kw", so enrichment becomes a
// no-op; the metadata ablation relies on this.
class MockMetadataProvider : public MetadataProvider {
 public:
  enum class Mode { kContext, kEcho };
  static constexpr std::size_t kContextWords = 8;

  explicit MockMetadataProvider(Mode mode = Mode::kContext) : mode_(mode) {}

  std::vector<MetadataRecord> Generate(
      std::string_view abstract,
      std::span<const std::string> keywords) override;
  std::string identity() const override;

 private:
  Mode mode_;
};

struct ProviderConfig {
  // "mock" or a base URL such as http://127.0.0.1:8080.
  std::string embed_endpoint = "mock";
  // "mock", "mock-echo" or a base URL.
  std::string metadata_endpoint = "mock";
  std::chrono::milliseconds timeout{30000};
  int retry_count = 2;
  std::optional<std::filesystem::path> cache_path;
  // Sent as "Authorization: Bearer <token>" when non-empty.
  std::string bearer_token;
  std::size_t embedding_dim = kEmbeddingDim;

  // Throws kInvalidArgument for timeout <= 0 or retry_count < 0.
  void Validate() const;
};

// Client for POST /embed. Responses are validated strictly (cardinality and
// dimension) and then normalized.
class HttpEmbedder : public Embedder {
 public:
  explicit HttpEmbedder(ProviderConfig config);

  std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) override;
  std::string identity() const override;
  std::size_t dimension() const override { return config_.embedding_dim; }

 private:
  ProviderConfig config_;
};

// Client for POST /metadata. The request carries the abstract, the keyword
// list and the formatted prompt; the response must cover every keyword.
class HttpMetadataProvider : public MetadataProvider {
 public:
  explicit HttpMetadataProvider(ProviderConfig config);

  std::vector<MetadataRecord> Generate(
      std::string_view abstract,
      std::span<const std::string> keywords) override;
  std::string identity() const override;

 private:
  ProviderConfig config_;
};

// Content-addressed embedding cache in front of another embedder. Entries
// are keyed by (inner identity, SHA-256 of the text). With a path, existing
// entries are loaded at construction and new ones are appended as JSONL
// records {"provider", "sha256", "embedding"}. The first vector stored for a
// key wins, so repeated texts are bit-identical within a session.
class CachingEmbedder : public Embedder {
 public:
  CachingEmbedder(std::shared_ptr<Embedder> inner,
                  std::optional<std::filesystem::path> path = std::nullopt);

  std::vector<EmbeddingVector> Embed(
      std::span<const std::string> texts) override;
  std::string identity() const override { return inner_->identity(); }
  std::size_t dimension() const override { return inner_->dimension(); }

  std::size_t size() const;
  std::size_t hits() const;
  std::size_t misses() const;

 private:
  std::string Key(const std::string &text) const;

  std::shared_ptr<Embedder> inner_;
  std::optional<std::filesystem::path> path_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, EmbeddingVector> entries_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

struct Providers {
  std::shared_ptr<Embedder> embedder;
  std::shared_ptr<MetadataProvider> metadata;
};

// Builds mock or HTTP providers from the config; the embedder is always
// wrapped in a CachingEmbedder (persistent when cache_path is set).
Providers MakeProviders(const ProviderConfig &config);

// The instruction sent to LLM-backed metadata providers.
extern const std::string_view kMetadataPromptTemplate;

// The instruction followed by the abstract and a bulleted keyword list.
std::string FormatMetadataPrompt(std::string_view abstract,
                                 std::span<const std::string> keywords);

// "keyword: metadata" when metadata is used, otherwise the keyword alone.
// Throws kInvalidArgument if metadata is requested but empty.
std::string ConcatForEmbedding(const MetadataRecord &record,
                               bool with_metadata = true);

}  // namespace labeler

#endif  // LABELER_PROVIDERS_H_
