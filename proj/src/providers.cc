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

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "labeler/english_stopwords.h"
#include "labeler/error.h"
#include "labeler/hashing.h"
#include "labeler/io.h"
#include "labeler/logging.h"

namespace labeler {
namespace {

bool IsTokenByte(unsigned char c) {
  return std::isalnum(c) != 0 || c >= 0x80;
}

bool IsClauseBreak(char c) {
  switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '(': case ')': case '[': case ']': case '{': case '}':
    case '"': case '\n':
      return true;
    default:
      return false;
  }
}

// Lowercased tokens grouped into clauses.
std::vector<std::vector<std::string>> Clauses(std::string_view text) {
  std::vector<std::vector<std::string>> clauses(1);
  std::string token;
  auto flush = [&] {
    if (!token.empty()) clauses.back().push_back(std::move(token));
    token.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (IsTokenByte(c)) {
      token.push_back(static_cast<char>(std::tolower(c)));
      continue;
    }
    flush();
    if (IsClauseBreak(ch) && !clauses.back().empty()) clauses.emplace_back();
  }
  flush();
  if (clauses.back().empty()) clauses.pop_back();
  return clauses;
}

std::vector<std::string> Tokens(std::string_view text) {
  std::vector<std::string> tokens;
  for (auto &clause : Clauses(text)) {
    for (auto &token : clause) tokens.push_back(std::move(token));
  }
  return tokens;
}

// Sentences for the context mock: split after . ! ? ; runs.
std::vector<std::vector<std::string>> Sentences(std::string_view text) {
  std::vector<std::vector<std::string>> sentences;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const bool end = i == text.size() || text[i] == '.' || text[i] == '!' ||
                     text[i] == '?' || text[i] == ';';
    if (!end) continue;
    auto tokens = Tokens(text.substr(start, i - start));
    if (!tokens.empty()) sentences.push_back(std::move(tokens));
    start = i + 1;
  }
  return sentences;
}

bool ContainsPhrase(const std::vector<std::string> &sentence,
                    const std::vector<std::string> &phrase) {
  if (phrase.empty() || phrase.size() > sentence.size()) return false;
  return std::search(sentence.begin(), sentence.end(), phrase.begin(),
                     phrase.end()) != sentence.end();
}

bool ContainsAny(const std::vector<std::string> &sentence,
                 const std::vector<std::string> &words) {
  return std::any_of(words.begin(), words.end(), [&](const std::string &w) {
    return std::find(sentence.begin(), sentence.end(), w) != sentence.end();
  });
}

std::string ContextMetadata(
    const std::vector<std::vector<std::string>> &sentences,
    const std::string &keyword) {
  const std::vector<std::string> phrase = Tokens(keyword);
  std::vector<const std::vector<std::string> *> chosen;
  for (const auto &s : sentences) {
    if (ContainsPhrase(s, phrase)) chosen.push_back(&s);
  }
  if (chosen.empty()) {
    for (const auto &s : sentences) {
      if (ContainsAny(s, phrase)) chosen.push_back(&s);
    }
  }
  if (chosen.empty()) {
    for (const auto &s : sentences) chosen.push_back(&s);
  }

  const std::unordered_set<std::string> own(phrase.begin(), phrase.end());
  const StopwordSet &stopwords = EnglishStopwords();
  std::map<std::string, std::pair<std::size_t, std::size_t>> stats;
  std::size_t position = 0;
  for (const auto *sentence : chosen) {
    for (const std::string &word : *sentence) {
      ++position;
      if (word.size() < 3 || own.contains(word) || stopwords.contains(word)) {
        continue;
      }
      auto [it, inserted] = stats.try_emplace(word, 0, position);
      ++it->second.first;
    }
  }
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>>
      ranked(stats.begin(), stats.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
    if (a.second.first != b.second.first) {
      return a.second.first > b.second.first;
    }
    return a.second.second < b.second.second;
  });
  std::string text;
  for (std::size_t i = 0;
       i < ranked.size() && i < MockMetadataProvider::kContextWords; ++i) {
    if (!text.empty()) text.push_back(' ');
    text += ranked[i].first;
  }
  return text.empty() ? keyword : text;
}

}  // namespace

EmbeddingVector Embedder::EmbedOne(const std::string &text) {
  auto out = Embed(std::span<const std::string>(&text, 1));
  return std::move(out.front());
}

std::vector<double> MockEmbedder::RawCounts(std::string_view text) const {
  std::vector<double> counts(dim_, 0.0);
  for (const auto &clause : Clauses(text)) {
    for (std::size_t i = 0; i < clause.size(); ++i) {
      counts[Fnv1a64("u:" + clause[i]) % dim_] += kUnigramWeight;
      if (i + 1 < clause.size()) {
        counts[Fnv1a64("b:" + clause[i] + " " + clause[i + 1]) % dim_] +=
            kBigramWeight;
      }
    }
  }
  return counts;
}

std::vector<EmbeddingVector> MockEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const std::string &text : texts) {
    if (text.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "cannot embed empty text");
    }
    std::vector<double> counts = RawCounts(text);
    if (std::all_of(counts.begin(), counts.end(),
                    [](double x) { return x == 0.0; })) {
      throw Error(ErrorCode::kInvalidArgument,
                  "text has no embeddable tokens: '" + text + "'");
    }
    out.push_back(EmbeddingVector::Normalize(std::move(counts)));
  }
  return out;
}

std::string MockEmbedder::identity() const {
  return "mock-hash-v1/" + std::to_string(dim_);
}

std::vector<MetadataRecord> MockMetadataProvider::Generate(
    std::string_view abstract, std::span<const std::string> keywords) {
  if (abstract.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "metadata requires an abstract");
  }
  if (keywords.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "metadata requires keywords");
  }
  const auto sentences = Sentences(abstract);
  std::vector<MetadataRecord> records;
  records.reserve(keywords.size());
  for (const std::string &keyword : keywords) {
    if (keyword.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty keyword");
    }
    records.push_back(
        {keyword, mode_ == Mode::kEcho ? keyword
                                       : ContextMetadata(sentences, keyword)});
  }
  return records;
}

std::string MockMetadataProvider::identity() const {
  return mode_ == Mode::kEcho ? "mock-echo-v1" : "mock-context-v1";
}

void ProviderConfig::Validate() const {
  if (timeout.count() <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "provider timeout must be > 0");
  }
  if (retry_count < 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "provider retry count must be >= 0");
  }
  if (embedding_dim == 0) {
    throw Error(ErrorCode::kInvalidArgument, "embedding dimension must be > 0");
  }
  if (embed_endpoint.empty() || metadata_endpoint.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "provider endpoint is empty");
  }
}

CachingEmbedder::CachingEmbedder(std::shared_ptr<Embedder> inner,
                                 std::optional<std::filesystem::path> path)
    : inner_(std::move(inner)), path_(std::move(path)) {
  if (!path_ || !std::filesystem::exists(*path_)) return;
  std::ifstream in(*path_);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot read cache '" + path_->string() + "'");
  }
  ForEachJsonLine(in, path_->string(), [&](const nlohmann::json &record,
                                           std::size_t line) {
    try {
      std::string key = record.at("provider").get<std::string>() + "\t" +
                        record.at("sha256").get<std::string>();
      auto values = record.at("embedding").get<std::vector<double>>();
      entries_.try_emplace(std::move(key),
                           EmbeddingVector::FromUnit(std::move(values)));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kParse, path_->string() + ":" +
                                         std::to_string(line) +
                                         ": malformed cache record: " +
                                         e.what());
    }
  });
}

std::string CachingEmbedder::Key(const std::string &text) const {
  return inner_->identity() + "\t" + Sha256Hex(text);
}

std::vector<EmbeddingVector> CachingEmbedder::Embed(
    std::span<const std::string> texts) {
  std::vector<std::string> keys;
  keys.reserve(texts.size());
  for (const std::string &text : texts) {
    if (text.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "cannot embed empty text");
    }
    keys.push_back(Key(text));
  }

  std::vector<std::string> missing;
  std::vector<std::string> missing_keys;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    std::unordered_set<std::string> queued;
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (entries_.contains(keys[i])) {
        ++hits_;
      } else if (queued.insert(keys[i]).second) {
        ++misses_;
        missing.push_back(texts[i]);
        missing_keys.push_back(keys[i]);
      }
    }
  }

  if (!missing.empty()) {
    std::vector<EmbeddingVector> fresh = inner_->Embed(missing);
    if (fresh.size() != missing.size()) {
      throw Error(ErrorCode::kProvider,
                  "embedder returned " + std::to_string(fresh.size()) +
                      " vectors for " + std::to_string(missing.size()) +
                      " texts");
    }
    std::lock_guard<std::mutex> lock(mutex_);
    std::string appended;
    const std::string provider = inner_->identity();
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      auto [it, inserted] =
          entries_.try_emplace(missing_keys[i], std::move(fresh[i]));
      if (inserted && path_) {
        const auto values = it->second.values();
        appended += DumpJson(nlohmann::json{
            {"provider", provider},
            {"sha256", missing_keys[i].substr(provider.size() + 1)},
            {"embedding", std::vector<double>(values.begin(), values.end())}});
        appended += '\n';
      }
    }
    if (!appended.empty()) {
      std::ofstream out(*path_, std::ios::app | std::ios::binary);
      out << appended;
      if (!out) {
        throw Error(ErrorCode::kIo,
                    "cannot append to cache '" + path_->string() + "'");
      }
    }
  }

  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  std::lock_guard<std::mutex> lock(mutex_);
  for (const std::string &key : keys) out.push_back(entries_.at(key));
  return out;
}

std::size_t CachingEmbedder::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.size();
}

std::size_t CachingEmbedder::hits() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return hits_;
}

std::size_t CachingEmbedder::misses() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return misses_;
}

Providers MakeProviders(const ProviderConfig &config) {
  config.Validate();
  std::shared_ptr<Embedder> embedder;
  if (config.embed_endpoint == "mock") {
    embedder = std::make_shared<MockEmbedder>(config.embedding_dim);
  } else {
    embedder = std::make_shared<HttpEmbedder>(config);
  }
  std::shared_ptr<MetadataProvider> metadata;
  if (config.metadata_endpoint == "mock") {
    metadata = std::make_shared<MockMetadataProvider>(
        MockMetadataProvider::Mode::kContext);
  } else if (config.metadata_endpoint == "mock-echo") {
    metadata = std::make_shared<MockMetadataProvider>(
        MockMetadataProvider::Mode::kEcho);
  } else {
    metadata = std::make_shared<HttpMetadataProvider>(config);
  }
  return {std::make_shared<CachingEmbedder>(std::move(embedder),
                                            config.cache_path),
          std::move(metadata)};
}

const std::string_view kMetadataPromptTemplate =
    "Given the scientific abstract and the keywords that have been extracted "
    "for the document, provide a concise meta data/prior information for "
    "every keyword in context of the document. Incorporate any extra "
    "knowledge that can help classify the document to relevant topics.";

std::string FormatMetadataPrompt(std::string_view abstract,
                                 std::span<const std::string> keywords) {
  std::string prompt(kMetadataPromptTemplate);
  prompt += "\n\nAbstract:\n";
  prompt += abstract;
  prompt += "\n\nKeywords:\n";
  for (const std::string &keyword : keywords) {
    prompt += "- ";
    prompt += keyword;
    prompt += '\n';
  }
  return prompt;
}

std::string ConcatForEmbedding(const MetadataRecord &record,
                               bool with_metadata) {
  if (!with_metadata) return record.keyword;
  if (record.metadata_text.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "keyword '" + record.keyword + "' has empty metadata");
  }
  return record.keyword + ": " + record.metadata_text;
}

}  // namespace labeler
