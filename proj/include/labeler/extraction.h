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

#ifndef LABELER_EXTRACTION_H_
#define LABELER_EXTRACTION_H_

#include <nlohmann/json.hpp>

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "labeler/corpus.h"
#include "labeler/embedding.h"
#include "labeler/providers.h"
#include "labeler/yake.h"

namespace labeler {

struct ExtractionParams {
  std::size_t keyword_count = 5;
  std::size_t candidate_pool = 10;
  std::size_t max_ngram = 3;
  double mmr_lambda = 0.7;
  // Embed "keyword: metadata" instead of the bare keyword.
  bool use_metadata = true;
  // Use the raw abstract rather than the preprocessed text as MMR query.
  bool query_from_raw = false;

  // Throws kInvalidArgument unless candidate_pool >= keyword_count >= 1,
  // max_ngram >= 1 and mmr_lambda is in [0, 1].
  void Validate() const;
  nlohmann::json ToJson() const;
  static ExtractionParams FromJson(const nlohmann::json &j);
};

struct Keyword {
  std::string text;
  double score = 0.0;
  // Empty when enrichment is disabled.
  std::string metadata;
  // Embedding of ConcatForEmbedding(text, metadata); what coverage uses.
  EmbeddingVector embedding;
};

struct KeywordSet {
  std::string doc_id;
  std::vector<Keyword> keywords;

  std::vector<EmbeddingVector> Embeddings() const;
  std::vector<std::string> Texts() const;
};

// Ranked YAKE candidates for the document's clean text, at most
// candidate_pool of them, case-folded duplicates merged.
// Throws kPrecondition for flagged-empty or too-short documents.
std::vector<ScoredCandidate> ExtractCandidates(const Document &doc,
                                               const ExtractionParams &params);

// Candidates -> optional metadata -> embedding -> MMR against the embedded
// document. Throws kPrecondition when fewer than keyword_count candidates
// exist.
KeywordSet ExtractKeywords(const Document &doc, const ExtractionParams &params,
                           const Providers &providers);

struct CorpusKeywords {
  std::vector<KeywordSet> sets;        // corpus order
  std::vector<std::string> skipped;    // ids of rejected documents
};

// ExtractKeywords over every document on `threads` workers (0 = hardware
// concurrency). Output order and content do not depend on the thread count.
// Documents failing a precondition are skipped with a warning; provider
// errors propagate.
CorpusKeywords ExtractCorpus(const Corpus &corpus,
                             const ExtractionParams &params,
                             const Providers &providers,
                             std::size_t threads = 0);

// JSONL: {"id", "keywords": [{"text", "score", "metadata", "embedding"}]}.
// "metadata" is null when enrichment was disabled.
void WriteKeywords(std::span<const KeywordSet> sets, std::ostream &out);
void WriteKeywords(std::span<const KeywordSet> sets,
                   const std::filesystem::path &path);
std::vector<KeywordSet> ReadKeywords(std::istream &in, std::string_view source);
std::vector<KeywordSet> ReadKeywords(const std::filesystem::path &path);

}  // namespace labeler

#endif  // LABELER_EXTRACTION_H_
