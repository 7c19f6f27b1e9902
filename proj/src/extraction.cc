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

#include "labeler/extraction.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "labeler/english_stopwords.h"
#include "labeler/error.h"
#include "labeler/io.h"
#include "labeler/logging.h"
#include "labeler/mmr.h"
#include "labeler/parallel.h"

namespace labeler {
namespace {

std::string Fold(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

template <typename T>
T Get(const nlohmann::json &j, const char *key, T fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<T>();
}

}  // namespace

void ExtractionParams::Validate() const {
  if (keyword_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "keyword count must be >= 1");
  }
  if (candidate_pool < keyword_count) {
    throw Error(ErrorCode::kInvalidArgument,
                "candidate pool (" + std::to_string(candidate_pool) +
                    ") must be >= keyword count (" +
                    std::to_string(keyword_count) + ")");
  }
  if (max_ngram < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max n-gram must be >= 1");
  }
  if (!(mmr_lambda >= 0.0 && mmr_lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mmr lambda must be in [0, 1]");
  }
}

nlohmann::json ExtractionParams::ToJson() const {
  return {{"keyword_count", keyword_count},
          {"candidate_pool", candidate_pool},
          {"max_ngram", max_ngram},
          {"mmr_lambda", mmr_lambda},
          {"use_metadata", use_metadata},
          {"query", query_from_raw ? "raw" : "clean"}};
}

ExtractionParams ExtractionParams::FromJson(const nlohmann::json &j) {
  ExtractionParams p;
  p.keyword_count = Get(j, "keyword_count", p.keyword_count);
  p.candidate_pool = Get(j, "candidate_pool", p.candidate_pool);
  p.max_ngram = Get(j, "max_ngram", p.max_ngram);
  p.mmr_lambda = Get(j, "mmr_lambda", p.mmr_lambda);
  p.use_metadata = Get(j, "use_metadata", p.use_metadata);
  p.query_from_raw = Get<std::string>(j, "query", "clean") == "raw";
  return p;
}

std::vector<EmbeddingVector> KeywordSet::Embeddings() const {
  std::vector<EmbeddingVector> out;
  out.reserve(keywords.size());
  for (const Keyword &k : keywords) out.push_back(k.embedding);
  return out;
}

std::vector<std::string> KeywordSet::Texts() const {
  std::vector<std::string> out;
  out.reserve(keywords.size());
  for (const Keyword &k : keywords) out.push_back(k.text);
  return out;
}

std::vector<ScoredCandidate> ExtractCandidates(const Document &doc,
                                               const ExtractionParams &params) {
  params.Validate();
  if (doc.flagged_empty()) {
    throw Error(ErrorCode::kPrecondition,
                "document '" + doc.id + "' is empty after preprocessing");
  }
  YakeOptions options;
  options.max_ngram = params.max_ngram;
  // Candidates are keyed on their lowercase form, so the case-fold merge
  // below is a guard rather than a filter.
  options.top = params.candidate_pool;
  std::vector<ScoredCandidate> ranked;
  try {
    ranked = ExtractYakeKeywords(doc.clean_text, EnglishStopwords(), options);
  } catch (const Error &e) {
    throw Error(e.code(), "document '" + doc.id + "': " + e.what());
  }
  std::vector<ScoredCandidate> out;
  std::set<std::string, std::less<>> seen;
  for (ScoredCandidate &candidate : ranked) {
    if (out.size() == params.candidate_pool) break;
    if (seen.insert(Fold(candidate.text)).second) {
      out.push_back(std::move(candidate));
    }
  }
  const double n = static_cast<double>(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].score = (n - static_cast<double>(i)) / n;
  }
  return out;
}

KeywordSet ExtractKeywords(const Document &doc, const ExtractionParams &params,
                           const Providers &providers) {
  std::vector<ScoredCandidate> candidates = ExtractCandidates(doc, params);
  if (candidates.size() < params.keyword_count) {
    throw Error(ErrorCode::kPrecondition,
                "document '" + doc.id + "' yields " +
                    std::to_string(candidates.size()) +
                    " candidates, fewer than the " +
                    std::to_string(params.keyword_count) + " keywords requested");
  }
  std::vector<std::string> texts;
  for (const ScoredCandidate &c : candidates) texts.push_back(c.text);

  std::vector<MetadataRecord> records;
  if (params.use_metadata) {
    records = providers.metadata->Generate(doc.clean_text, texts);
    if (records.size() != texts.size()) {
      throw Error(ErrorCode::kProvider,
                  "metadata provider returned " +
                      std::to_string(records.size()) + " records for " +
                      std::to_string(texts.size()) + " keywords");
    }
  } else {
    for (const std::string &t : texts) records.push_back({t, ""});
  }

  std::vector<std::string> inputs;
  for (const MetadataRecord &r : records) {
    inputs.push_back(ConcatForEmbedding(r, params.use_metadata));
  }
  inputs.push_back(params.query_from_raw ? doc.raw_text : doc.clean_text);
  std::vector<EmbeddingVector> vectors = providers.embedder->Embed(inputs);
  const EmbeddingVector query = vectors.back();
  vectors.pop_back();

  KeywordSet set;
  set.doc_id = doc.id;
  for (std::size_t i :
       MmrSelect(query, vectors, params.mmr_lambda, params.keyword_count)) {
    set.keywords.push_back({candidates[i].text, candidates[i].score,
                            params.use_metadata ? records[i].metadata_text : "",
                            vectors[i]});
  }
  return set;
}

CorpusKeywords ExtractCorpus(const Corpus &corpus,
                             const ExtractionParams &params,
                             const Providers &providers, std::size_t threads) {
  params.Validate();
  const auto &docs = corpus.documents();
  std::vector<std::optional<KeywordSet>> results(docs.size());
  std::vector<std::string> reasons(docs.size());
  ParallelFor(docs.size(), threads, [&](std::size_t i) {
    try {
      results[i] = ExtractKeywords(docs[i], params, providers);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kPrecondition) throw;
      reasons[i] = e.what();
    }
  });
  CorpusKeywords out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (results[i]) {
      out.sets.push_back(std::move(*results[i]));
    } else {
      LogWarning("document_skipped", {{"id", docs[i].id}, {"reason", reasons[i]}});
      out.skipped.push_back(docs[i].id);
    }
  }
  return out;
}

void WriteKeywords(std::span<const KeywordSet> sets, std::ostream &out) {
  for (const KeywordSet &set : sets) {
    nlohmann::json keywords = nlohmann::json::array();
    for (const Keyword &k : set.keywords) {
      nlohmann::json record{{"text", k.text}, {"score", k.score}};
      record["metadata"] =
          k.metadata.empty() ? nlohmann::json(nullptr) : nlohmann::json(k.metadata);
      record["embedding"] = std::vector<double>(k.embedding.values().begin(),
                                                k.embedding.values().end());
      keywords.push_back(std::move(record));
    }
    out << DumpJson({{"id", set.doc_id}, {"keywords", keywords}}) << '\n';
  }
}

void WriteKeywords(std::span<const KeywordSet> sets,
                   const std::filesystem::path &path) {
  std::ostringstream buffer;
  WriteKeywords(sets, buffer);
  WriteTextFile(path, buffer.str());
}

std::vector<KeywordSet> ReadKeywords(std::istream &in, std::string_view source) {
  std::vector<KeywordSet> sets;
  ForEachJsonLine(in, source, [&](const nlohmann::json &record,
                                  std::size_t line) {
    auto fail = [&](const std::string &what) {
      throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                         std::to_string(line) + ": " + what);
    };
    if (!record.is_object() || !record.contains("id") ||
        !record["id"].is_string() || !record.contains("keywords") ||
        !record["keywords"].is_array()) {
      fail("expected {\"id\": string, \"keywords\": [...]}");
    }
    KeywordSet set;
    set.doc_id = record["id"].get<std::string>();
    for (const auto &k : record["keywords"]) {
      if (!k.is_object() || !k.contains("text") || !k["text"].is_string() ||
          !k.contains("embedding") || !k["embedding"].is_array()) {
        fail("keyword entries need \"text\" and \"embedding\"");
      }
      Keyword keyword;
      keyword.text = k["text"].get<std::string>();
      keyword.score = k.value("score", 0.0);
      if (k.contains("metadata") && k["metadata"].is_string()) {
        keyword.metadata = k["metadata"].get<std::string>();
      }
      try {
        keyword.embedding =
            EmbeddingVector::FromUnit(k["embedding"].get<std::vector<double>>());
      } catch (const nlohmann::json::exception &) {
        fail("embedding must be an array of numbers");
      } catch (const Error &e) {
        fail(std::string("keyword '") + keyword.text + "': " + e.what());
      }
      set.keywords.push_back(std::move(keyword));
    }
    sets.push_back(std::move(set));
  });
  return sets;
}

std::vector<KeywordSet> ReadKeywords(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kNotFound,
                "keywords file '" + path.string() + "' not found");
  }
  return ReadKeywords(in, path.string());
}

}  // namespace labeler
