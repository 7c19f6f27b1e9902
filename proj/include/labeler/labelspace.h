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

#ifndef LABELER_LABELSPACE_H_
#define LABELER_LABELSPACE_H_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "labeler/corpus.h"
#include "labeler/embedding.h"
#include "labeler/extraction.h"
#include "labeler/kmeans.h"
#include "labeler/providers.h"

namespace labeler {

struct Label {
  std::string name;
  EmbeddingVector embedding;
  std::size_t member_count = 0;
};

// k named labels with unit-norm embeddings (the rows of L), the clustering
// parameters and a provenance block describing how the space was produced.
class LabelSpace {
 public:
  LabelSpace() = default;
  // Throws kInvalidArgument on empty or duplicate names or mixed dimensions.
  LabelSpace(std::vector<Label> labels, ClusterParams params,
             nlohmann::json provenance = nlohmann::json::object());

  const std::vector<Label> &labels() const { return labels_; }
  const ClusterParams &params() const { return params_; }
  const nlohmann::json &provenance() const { return provenance_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const;

  std::vector<std::string> Names() const;
  std::vector<EmbeddingVector> Embeddings() const;
  // Index of the label with this name, or size() when absent.
  std::size_t IndexOf(std::string_view name) const;

  // The first `count` labels, same params and provenance; for nested-space
  // experiments.
  LabelSpace Prefix(std::size_t count) const;

  // SHA-256 over the canonical JSON of params, provenance and label names.
  // Annotations are keyed on it.
  std::string Id() const;

  nlohmann::json ToJson() const;
  static LabelSpace FromJson(const nlohmann::json &j);
  void Save(const std::filesystem::path &path) const;
  static LabelSpace Load(const std::filesystem::path &path);

 private:
  std::vector<Label> labels_;
  ClusterParams params_;
  nlohmann::json provenance_ = nlohmann::json::object();
};

// One pooled point: a keyword occurrence and its enriched embedding.
struct PooledKeyword {
  std::string text;
  EmbeddingVector embedding;
};

std::vector<PooledKeyword> PoolKeywords(std::span<const KeywordSet> sets);

// Names each cluster by the member whose embedding has the largest cosine to
// the normalized centroid (ties to the earliest member). When that text
// already names an earlier cluster, the next-nearest member text not yet
// used is taken; a cluster with no unused text gets "<nearest> (<index>)".
// Label embeddings are embeddings of the names.
// Throws kPrecondition for an empty cluster and kInvalidArgument when the
// assignments do not match the keywords.
std::vector<Label> NameClusters(std::span<const PooledKeyword> keywords,
                                std::span<const std::size_t> assignments,
                                std::span<const std::vector<double>> centroids,
                                Embedder &embedder);

// Pools every keyword of `sets`, clusters, and names the clusters.
LabelSpace BuildLabelSpace(std::span<const KeywordSet> sets,
                           const ClusterParams &params, Embedder &embedder,
                           nlohmann::json provenance = nlohmann::json::object());

struct GeneratedSpace {
  LabelSpace space;
  CorpusKeywords keywords;
};

// Extract, enrich, embed, pool, cluster and name.
GeneratedSpace GenerateLabelSpace(const Corpus &corpus,
                                  const ExtractionParams &extraction,
                                  const ClusterParams &cluster,
                                  const Providers &providers,
                                  std::size_t threads = 0);

// Provenance shared by every artifact of a run: corpus content hash,
// parameters and provider identities.
nlohmann::json MakeProvenance(const Corpus &corpus,
                              const ExtractionParams &extraction,
                              const Providers &providers);

}  // namespace labeler

#endif  // LABELER_LABELSPACE_H_
