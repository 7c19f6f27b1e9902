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

#ifndef LABELER_CORPUS_H_
#define LABELER_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace labeler {

// Lowercase stopword tokens. Ordered so that provenance hashes are stable.
using StopwordSet = std::set<std::string, std::less<>>;

struct Document {
  std::string id;
  int year = 0;
  std::string title;
  std::string raw_text;
  std::string clean_text;

  // Nothing but stopwords survived preprocessing. Such documents stay in the
  // corpus but keyword extraction refuses them.
  bool flagged_empty() const { return clean_text.empty(); }
};

// An immutable, ordered document collection. Safe to share across readers.
class Corpus {
 public:
  Corpus() = default;
  // Throws kDuplicate if two documents share an id.
  Corpus(std::vector<Document> documents, StopwordSet stopwords);

  const std::vector<Document> &documents() const { return documents_; }
  const StopwordSet &stopwords() const { return stopwords_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  // nullptr when absent.
  const Document *Find(std::string_view id) const;

  // SHA-256 over the documents (in order) and the stopword set.
  std::string ContentHash() const;

 private:
  std::vector<Document> documents_;
  StopwordSet stopwords_;
};

struct SplitSpec {
  std::uint64_t seed = 0;
  double test_fraction = 0.1;
};

struct IngestOptions {
  // Prepend the title to the abstract before preprocessing. raw_text always
  // holds the abstract verbatim.
  bool include_title = false;
  // Use a record's "clean_text" field when present instead of recomputing
  // it. Set when re-reading a corpus written by WriteCorpus.
  bool trust_clean_text = false;
};

// The domain stopwords shipped in data/domain_stopwords.txt.
StopwordSet DefaultDomainStopwords();

// One token per line; '#' starts a comment; tokens are lowercased.
StopwordSet ParseStopwords(std::istream &in);
StopwordSet LoadStopwords(const std::filesystem::path &path);

// Splits on whitespace, lowercases, drops every token whose form with
// leading/trailing punctuation stripped is a stopword, and rejoins with
// single spaces. Clause punctuation trailing a dropped token is carried onto
// the preceding kept token so sentence boundaries survive.
std::string CleanText(std::string_view raw, const StopwordSet &stopwords);

// Lowercase form of `token` with leading and trailing ASCII punctuation
// removed; this is the form matched against the stopword set.
std::string StopwordMatchForm(std::string_view token);

// Whitespace tokenization. Besides ASCII whitespace, recognizes the UTF-8
// encodings of the Unicode space separators.
std::vector<std::string> SplitWhitespace(std::string_view text);

// JSONL records {"id", "year", "title", "abstract"}. `source` names the input
// in error messages. Throws kParse (with line number) or kDuplicate.
Corpus ParseCorpus(std::istream &in, std::string_view source,
                   const StopwordSet &stopwords,
                   const IngestOptions &options = {});
Corpus Ingest(const std::filesystem::path &path, const StopwordSet &stopwords,
              const IngestOptions &options = {});

// Writes the input fields plus "clean_text" (and "flagged" for empty ones).
void WriteCorpus(const Corpus &corpus, std::ostream &out);
void WriteCorpus(const Corpus &corpus, const std::filesystem::path &path);

// Seeded Fisher-Yates shuffle (std::mt19937_64, j = draw mod (i + 1), i from
// n-1 down to 1); the first round(fraction * n) shuffled documents form the
// test side. Both sides keep corpus order.
std::pair<Corpus, Corpus> Split(const Corpus &corpus, const SplitSpec &options);

}  // namespace labeler

#endif  // LABELER_CORPUS_H_
