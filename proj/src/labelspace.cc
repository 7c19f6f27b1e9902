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

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "labeler/error.h"
#include "labeler/hashing.h"
#include "labeler/io.h"
#include "labeler/logging.h"
#include "labeler/version.h"

namespace labeler {

LabelSpace::LabelSpace(std::vector<Label> labels, ClusterParams params,
                       nlohmann::json provenance)
    : labels_(std::move(labels)),
      params_(params),
      provenance_(std::move(provenance)) {
  if (labels_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "label space has no labels");
  }
  std::set<std::string, std::less<>> names;
  for (const Label &label : labels_) {
    if (label.name.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "label with empty name");
    }
    if (!names.insert(label.name).second) {
      throw Error(ErrorCode::kDuplicate,
                  "duplicate label name '" + label.name + "'");
    }
    if (label.embedding.dim() != labels_[0].embedding.dim()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "label '" + label.name + "' has dimension " +
                      std::to_string(label.embedding.dim()) + ", expected " +
                      std::to_string(labels_[0].embedding.dim()));
    }
  }
}

std::size_t LabelSpace::dim() const {
  return labels_.empty() ? 0 : labels_[0].embedding.dim();
}

std::vector<std::string> LabelSpace::Names() const {
  std::vector<std::string> out;
  for (const Label &label : labels_) out.push_back(label.name);
  return out;
}

std::vector<EmbeddingVector> LabelSpace::Embeddings() const {
  std::vector<EmbeddingVector> out;
  for (const Label &label : labels_) out.push_back(label.embedding);
  return out;
}

std::size_t LabelSpace::IndexOf(std::string_view name) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].name == name) return i;
  }
  return labels_.size();
}

LabelSpace LabelSpace::Prefix(std::size_t count) const {
  if (count == 0 || count > labels_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "prefix of " + std::to_string(count) + " labels out of " +
                    std::to_string(labels_.size()));
  }
  return LabelSpace(
      std::vector<Label>(labels_.begin(),
                         labels_.begin() + static_cast<std::ptrdiff_t>(count)),
      params_, provenance_);
}

std::string LabelSpace::Id() const {
  const nlohmann::json identity{
      {"params", params_.ToJson()}, {"provenance", provenance_}, {"names", Names()}};
  return Sha256Hex(DumpJson(identity));
}

nlohmann::json LabelSpace::ToJson() const {
  nlohmann::json labels = nlohmann::json::array();
  for (const Label &label : labels_) {
    labels.push_back(
        {{"name", label.name},
         {"embedding", std::vector<double>(label.embedding.values().begin(),
                                           label.embedding.values().end())},
         {"member_count", label.member_count}});
  }
  return {{"params", params_.ToJson()},
          {"labels", std::move(labels)},
          {"provenance", provenance_}};
}

LabelSpace LabelSpace::FromJson(const nlohmann::json &j) {
  if (!j.is_object() || !j.contains("labels") || !j["labels"].is_array()) {
    throw Error(ErrorCode::kParse, "label space needs a \"labels\" array");
  }
  std::vector<Label> labels;
  try {
    for (const auto &entry : j["labels"]) {
      Label label;
      label.name = entry.at("name").get<std::string>();
      label.embedding = EmbeddingVector::FromUnit(
          entry.at("embedding").get<std::vector<double>>());
      label.member_count = entry.value("member_count", std::size_t{0});
      labels.push_back(std::move(label));
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kParse, std::string("malformed label: ") + e.what());
  }
  return LabelSpace(std::move(labels),
                    ClusterParams::FromJson(j.value("params", nlohmann::json::object())),
                    j.value("provenance", nlohmann::json::object()));
}

void LabelSpace::Save(const std::filesystem::path &path) const {
  WriteJsonFile(path, ToJson());
}

LabelSpace LabelSpace::Load(const std::filesystem::path &path) {
  try {
    return FromJson(ReadJsonFile(path));
  } catch (const Error &e) {
    if (e.code() != ErrorCode::kParse) throw;
    throw Error(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

std::vector<PooledKeyword> PoolKeywords(std::span<const KeywordSet> sets) {
  std::vector<PooledKeyword> pooled;
  for (const KeywordSet &set : sets) {
    for (const Keyword &k : set.keywords) pooled.push_back({k.text, k.embedding});
  }
  return pooled;
}

std::vector<Label> NameClusters(std::span<const PooledKeyword> keywords,
                                std::span<const std::size_t> assignments,
                                std::span<const std::vector<double>> centroids,
                                Embedder &embedder) {
  if (assignments.size() != keywords.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::to_string(assignments.size()) + " assignments for " +
                    std::to_string(keywords.size()) + " keywords");
  }
  const std::size_t k = centroids.size();
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i] >= k) {
      throw Error(ErrorCode::kInvalidArgument,
                  "assignment " + std::to_string(assignments[i]) +
                      " out of range for " + std::to_string(k) + " clusters");
    }
    members[assignments[i]].push_back(i);
  }

  std::set<std::string, std::less<>> used;
  std::vector<Label> labels(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (members[c].empty()) {
      throw Error(ErrorCode::kPrecondition,
                  "cluster " + std::to_string(c) + " is empty");
    }
    const double norm = Norm(centroids[c]);
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t i : members[c]) {
      const double sim =
          norm > 0.0 ? Dot(keywords[i].embedding.values(), centroids[c]) / norm
                     : 0.0;
      ranked.emplace_back(sim, i);
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto &a, const auto &b) { return a.first > b.first; });
    std::string name;
    for (const auto &[sim, i] : ranked) {
      if (!used.contains(keywords[i].text)) {
        name = keywords[i].text;
        break;
      }
    }
    if (name.empty()) {
      // Every member text is taken: borrow the nearest unused keyword from
      // the whole pool so names still come from the data.
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < keywords.size(); ++i) {
        if (used.contains(keywords[i].text)) continue;
        const double sim =
            norm > 0.0 ? Dot(keywords[i].embedding.values(), centroids[c]) / norm
                       : 0.0;
        if (sim > best) {
          best = sim;
          name = keywords[i].text;
        }
      }
      if (!name.empty()) {
        LogWarning("label_name_borrowed", {{"cluster", c}, {"name", name}});
      }
    }
    if (name.empty()) {
      name = keywords[ranked.front().second].text + " (" + std::to_string(c + 1) + ")";
      LogWarning("label_name_suffixed", {{"cluster", c}, {"name", name}});
    } else if (name != keywords[ranked.front().second].text) {
      LogInfo("label_name_collision",
              {{"cluster", c},
               {"nearest", keywords[ranked.front().second].text},
               {"name", name}});
    }
    used.insert(name);
    labels[c].name = std::move(name);
    labels[c].member_count = members[c].size();
  }

  std::vector<std::string> names;
  for (const Label &label : labels) names.push_back(label.name);
  std::vector<EmbeddingVector> vectors = embedder.Embed(names);
  for (std::size_t c = 0; c < k; ++c) labels[c].embedding = std::move(vectors[c]);
  return labels;
}

LabelSpace BuildLabelSpace(std::span<const KeywordSet> sets,
                           const ClusterParams &params, Embedder &embedder,
                           nlohmann::json provenance) {
  const std::vector<PooledKeyword> pooled = PoolKeywords(sets);
  params.Validate(pooled.size());
  std::vector<std::vector<double>> points;
  points.reserve(pooled.size());
  for (const PooledKeyword &p : pooled) {
    points.emplace_back(p.embedding.values().begin(), p.embedding.values().end());
  }
  const KMeansResult clusters = KMeans(points, params);
  LogInfo("kmeans_done", {{"k", params.k},
                          {"points", points.size()},
                          {"wcss", clusters.wcss},
                          {"iterations", clusters.iterations},
                          {"restart", clusters.restart}});
  return LabelSpace(
      NameClusters(pooled, clusters.assignments, clusters.centroids, embedder),
      params, std::move(provenance));
}

nlohmann::json MakeProvenance(const Corpus &corpus,
                              const ExtractionParams &extraction,
                              const Providers &providers) {
  return {{"tool", kToolName},
          {"version", kVersion},
          {"corpus_sha256", corpus.ContentHash()},
          {"extraction", extraction.ToJson()},
          {"providers",
           {{"embedder", providers.embedder->identity()},
            {"metadata", providers.metadata->identity()}}}};
}

GeneratedSpace GenerateLabelSpace(const Corpus &corpus,
                                  const ExtractionParams &extraction,
                                  const ClusterParams &cluster,
                                  const Providers &providers,
                                  std::size_t threads) {
  if (corpus.empty()) {
    throw Error(ErrorCode::kPrecondition, "corpus is empty");
  }
  cluster.Validate();
  GeneratedSpace out;
  out.keywords = ExtractCorpus(corpus, extraction, providers, threads);
  nlohmann::json provenance = MakeProvenance(corpus, extraction, providers);
  provenance["skipped_documents"] = out.keywords.skipped;
  out.space = BuildLabelSpace(out.keywords.sets, cluster, *providers.embedder,
                              std::move(provenance));
  return out;
}

}  // namespace labeler
