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

#include "labeler/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "labeler/error.h"
#include "labeler/hashing.h"
#include "labeler/io.h"

namespace labeler {
namespace {

bool IsAsciiPunct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

bool IsClausePunct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
}

// Length of a whitespace sequence starting at text[i], or 0.
std::size_t WhitespaceLength(std::string_view text, std::size_t i) {
  const auto byte = [&](std::size_t k) -> unsigned char {
    return k < text.size() ? static_cast<unsigned char>(text[k]) : 0;
  };
  const unsigned char c = byte(i);
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
      c == '\f') {
    return 1;
  }
  if (c == 0xC2 && (byte(i + 1) == 0x85 || byte(i + 1) == 0xA0)) return 2;
  if (c == 0xE1 && byte(i + 1) == 0x9A && byte(i + 2) == 0x80) return 3;
  if (c == 0xE2 && byte(i + 1) == 0x80) {
    const unsigned char d = byte(i + 2);
    if ((d >= 0x80 && d <= 0x8A) || d == 0xA8 || d == 0xA9 || d == 0xAF) {
      return 3;
    }
  }
  if (c == 0xE2 && byte(i + 1) == 0x81 && byte(i + 2) == 0x9F) return 3;
  if (c == 0xE3 && byte(i + 1) == 0x80 && byte(i + 2) == 0x80) return 3;
  return 0;
}

std::string Lowercase(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

const nlohmann::json &RequireField(const nlohmann::json &record,
                                   const char *name, std::string_view source,
                                   std::size_t line) {
  auto it = record.find(name);
  if (it == record.end()) {
    throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                       std::to_string(line) +
                                       ": malformed record: missing field '" +
                                       name + "'");
  }
  return *it;
}

[[noreturn]] void WrongType(const char *name, const char *expected,
                            std::string_view source, std::size_t line) {
  throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                     std::to_string(line) +
                                     ": malformed record: field '" + name +
                                     "' must be " + expected);
}

}  // namespace

Corpus::Corpus(std::vector<Document> documents, StopwordSet stopwords)
    : documents_(std::move(documents)), stopwords_(std::move(stopwords)) {
  std::unordered_set<std::string> seen;
  for (const Document &doc : documents_) {
    if (!seen.insert(doc.id).second) {
      throw Error(ErrorCode::kDuplicate, "duplicate document id '" + doc.id +
                                             "'");
    }
  }
}

const Document *Corpus::Find(std::string_view id) const {
  for (const Document &doc : documents_) {
    if (doc.id == id) return &doc;
  }
  return nullptr;
}

std::string Corpus::ContentHash() const {
  std::string canonical;
  for (const Document &doc : documents_) {
    canonical += DumpJson(nlohmann::json{{"id", doc.id},
                                         {"year", doc.year},
                                         {"title", doc.title},
                                         {"abstract", doc.raw_text},
                                         {"clean_text", doc.clean_text}});
    canonical += '\n';
  }
  for (const std::string &word : stopwords_) {
    canonical += word;
    canonical += '\n';
  }
  return Sha256Hex(canonical);
}

StopwordSet DefaultDomainStopwords() {
  return {"nasa",    "space",      "mission", "missions", "research",
          "sbir",    "spacecraft", "future",  "science"};
}

StopwordSet ParseStopwords(std::istream &in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    for (const std::string &token : SplitWhitespace(line)) {
      words.insert(Lowercase(token));
    }
  }
  return words;
}

StopwordSet LoadStopwords(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kNotFound,
                "stopword file '" + path.string() + "' not found");
  }
  return ParseStopwords(in);
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::size_t ws = WhitespaceLength(text, i); ws > 0) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
      i += ws;
    } else {
      current.push_back(text[i]);
      ++i;
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::string StopwordMatchForm(std::string_view token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && IsAsciiPunct(token[begin])) ++begin;
  while (end > begin && IsAsciiPunct(token[end - 1])) --end;
  return Lowercase(token.substr(begin, end - begin));
}

std::string CleanText(std::string_view raw, const StopwordSet &stopwords) {
  std::vector<std::string> kept;
  for (const std::string &token : SplitWhitespace(raw)) {
    const std::string form = StopwordMatchForm(token);
    if (form.empty() || !stopwords.contains(form)) {
      kept.push_back(Lowercase(token));
      continue;
    }
    // Dropped token: keep its trailing clause punctuation on the previous
    // kept token, e.g. "propulsion for NASA." -> "propulsion for."
    std::size_t end = token.size();
    while (end > 0 && IsAsciiPunct(token[end - 1])) --end;
    std::string trailing;
    for (std::size_t k = end; k < token.size(); ++k) {
      if (IsClausePunct(token[k])) trailing.push_back(token[k]);
    }
    if (!trailing.empty() && !kept.empty() &&
        !IsClausePunct(kept.back().back())) {
      kept.back() += trailing.substr(0, 1);
    }
  }
  std::string out;
  for (const std::string &token : kept) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return out;
}

Corpus ParseCorpus(std::istream &in, std::string_view source,
                   const StopwordSet &stopwords, const IngestOptions &options) {
  std::vector<Document> documents;
  std::unordered_set<std::string> seen;
  ForEachJsonLine(in, source, [&](const nlohmann::json &record,
                                  std::size_t line) {
    if (!record.is_object()) {
      throw Error(ErrorCode::kParse, std::string(source) + ":" +
                                         std::to_string(line) +
                                         ": malformed record: not an object");
    }
    Document doc;
    const auto &id = RequireField(record, "id", source, line);
    if (!id.is_string()) WrongType("id", "a string", source, line);
    doc.id = id.get<std::string>();
    const auto &year = RequireField(record, "year", source, line);
    if (!year.is_number_integer()) WrongType("year", "an integer", source, line);
    doc.year = year.get<int>();
    const auto &title = RequireField(record, "title", source, line);
    if (!title.is_string()) WrongType("title", "a string", source, line);
    doc.title = title.get<std::string>();
    const auto &abstract = RequireField(record, "abstract", source, line);
    if (!abstract.is_string()) WrongType("abstract", "a string", source, line);
    doc.raw_text = abstract.get<std::string>();

    if (!seen.insert(doc.id).second) {
      throw Error(ErrorCode::kDuplicate, std::string(source) + ":" +
                                             std::to_string(line) +
                                             ": duplicate document id '" +
                                             doc.id + "'");
    }
    auto clean = record.find("clean_text");
    if (options.trust_clean_text && clean != record.end() &&
        clean->is_string()) {
      doc.clean_text = clean->get<std::string>();
    } else if (options.include_title && !doc.title.empty()) {
      doc.clean_text = CleanText(doc.title + ". " + doc.raw_text, stopwords);
    } else {
      doc.clean_text = CleanText(doc.raw_text, stopwords);
    }
    documents.push_back(std::move(doc));
  });
  return Corpus(std::move(documents), stopwords);
}

Corpus Ingest(const std::filesystem::path &path, const StopwordSet &stopwords,
              const IngestOptions &options) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kNotFound,
                "corpus file '" + path.string() + "' not found");
  }
  return ParseCorpus(in, path.string(), stopwords, options);
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (const Document &doc : corpus.documents()) {
    nlohmann::json record{{"id", doc.id},
                          {"year", doc.year},
                          {"title", doc.title},
                          {"abstract", doc.raw_text},
                          {"clean_text", doc.clean_text}};
    if (doc.flagged_empty()) record["flagged"] = true;
    out << DumpJson(record) << '\n';
  }
}

void WriteCorpus(const Corpus &corpus, const std::filesystem::path &path) {
  std::ostringstream buffer;
  WriteCorpus(corpus, buffer);
  WriteTextFile(path, buffer.str());
}

std::pair<Corpus, Corpus> Split(const Corpus &corpus, const SplitSpec &options) {
  if (!(options.test_fraction > 0.0 && options.test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "test fraction must lie in (0, 1), got " +
                    std::to_string(options.test_fraction));
  }
  const std::size_t n = corpus.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 gen(options.seed);
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t j = static_cast<std::size_t>(gen() % (i + 1));
    std::swap(order[i], order[j]);
  }
  const auto test_size = static_cast<std::size_t>(
      std::llround(options.test_fraction * static_cast<double>(n)));
  std::vector<bool> in_test(n, false);
  for (std::size_t i = 0; i < test_size; ++i) in_test[order[i]] = true;

  std::vector<Document> train;
  std::vector<Document> test;
  for (std::size_t i = 0; i < n; ++i) {
    (in_test[i] ? test : train).push_back(corpus.documents()[i]);
  }
  return {Corpus(std::move(train), corpus.stopwords()),
          Corpus(std::move(test), corpus.stopwords())};
}

}  // namespace labeler
