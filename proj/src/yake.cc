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

#include "labeler/yake.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "labeler/error.h"

namespace labeler {
namespace {

bool IsPunct(char c) { return std::ispunct(static_cast<unsigned char>(c)); }
bool IsDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }
bool IsUpper(char c) { return std::isupper(static_cast<unsigned char>(c)); }
bool IsLower(char c) { return std::islower(static_cast<unsigned char>(c)); }
bool IsAlpha(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool AllPunct(std::string_view word) {
  return !word.empty() && std::all_of(word.begin(), word.end(), IsPunct);
}

std::size_t CodePoints(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

bool IsAbbreviation(std::string_view word) {
  // Dotted initialisms such as "e.g." or "u.s.".
  if (word.size() >= 4 && word.back() == '.') {
    bool dotted = true;
    for (std::size_t i = 0; i < word.size(); ++i) {
      const bool expect_dot = i % 2 == 1;
      if (expect_dot ? word[i] != '.' : !IsAlpha(word[i])) {
        dotted = false;
        break;
      }
    }
    if (dotted) return true;
  }
  static const std::set<std::string, std::less<>> kShort = {
      "al.", "approx.", "ca.", "cf.", "co.", "dr.", "eq.", "etc.", "fig.",
      "figs.", "inc.", "ltd.", "mr.", "mrs.", "ms.", "no.", "prof.", "vol.",
      "vs."};
  return kShort.contains(Lower(word));
}

bool IsNumber(std::string_view word) {
  std::string digits;
  for (char c : word) {
    if (c != ',') digits.push_back(c);
  }
  auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), IsDigit);
  };
  if (all_digits(digits)) return true;
  if (auto dot = digits.find('.'); dot != std::string::npos) {
    digits.erase(dot, 1);
    return all_digits(digits);
  }
  return false;
}

// Orthographic tag: d digit, u unusual, a acronym, n proper noun, p plain.
char Tag(std::string_view word, std::size_t position) {
  if (IsNumber(word)) return 'd';
  std::size_t digits = 0, alphas = 0, puncts = 0;
  for (char c : word) {
    if (IsDigit(c)) ++digits;
    if (IsAlpha(c)) ++alphas;
    if (IsPunct(c)) ++puncts;
  }
  if ((digits > 0 && alphas > 0) || (digits == 0 && alphas == 0) ||
      puncts > 1) {
    return 'u';
  }
  const bool has_upper = std::any_of(word.begin(), word.end(), IsUpper);
  const bool has_lower = std::any_of(word.begin(), word.end(), IsLower);
  if (has_upper && !has_lower) return 'a';
  if (word.size() > 1 && IsUpper(word[0]) && position > 0 &&
      std::count_if(word.begin(), word.end(), IsUpper) == 1) {
    return 'n';
  }
  return 'p';
}

// Splits one whitespace-delimited chunk into word and punctuation tokens.
// Sets `ends_sentence` when the chunk closes a sentence.
void SplitChunk(std::string_view chunk, std::vector<std::string> &out,
                bool &ends_sentence) {
  ends_sentence = false;
  std::size_t begin = 0;
  while (begin < chunk.size() && IsPunct(chunk[begin])) {
    out.emplace_back(1, chunk[begin]);
    ++begin;
  }
  if (begin == chunk.size()) {
    ends_sentence = chunk.find_first_of(".!?") != std::string_view::npos;
    return;
  }
  std::string_view rest = chunk.substr(begin);
  if (IsAbbreviation(rest)) {
    out.emplace_back(rest);
    return;
  }
  std::size_t end = rest.size();
  while (end > 0 && IsPunct(rest[end - 1])) --end;
  std::string_view word = rest.substr(0, end);
  std::string_view trailing = rest.substr(end);

  // Contractions: "don't" -> "do" "n't"; "'s", "'re", ... are dropped.
  const std::string lower = Lower(word);
  static const std::vector<std::string> kClitics = {"'s", "'re", "'ll", "'ve",
                                                    "'d", "'m"};
  bool handled = false;
  if (lower.size() > 3 && lower.ends_with("n't")) {
    out.emplace_back(word.substr(0, word.size() - 3));
    out.emplace_back(word.substr(word.size() - 3));
    handled = true;
  } else {
    for (const std::string &clitic : kClitics) {
      if (lower.size() > clitic.size() && lower.ends_with(clitic)) {
        out.emplace_back(word.substr(0, word.size() - clitic.size()));
        handled = true;
        break;
      }
    }
  }
  if (!handled) out.emplace_back(word);
  for (char c : trailing) out.emplace_back(1, c);
  ends_sentence = trailing.find_first_of(".!?") != std::string_view::npos;
}

struct Term {
  std::string unique;
  bool stopword = false;
  double tf = 0.0;
  double tf_acronym = 0.0;
  double tf_proper = 0.0;
  std::set<std::size_t> sentences;
  std::map<std::size_t, double> right;  // neighbour id -> co-occurrences
  std::map<std::size_t, double> left;
  double h = 0.0;
};

struct BlockWord {
  char tag;
  std::string surface;
  std::size_t term;
};

struct Candidate {
  std::string unique;
  std::vector<std::size_t> terms;
  std::set<std::string> tag_patterns;
  double tf = 0.0;
  double h = 0.0;
};

class Extractor {
 public:
  Extractor(const StopwordSet &stopwords, const YakeOptions &options)
      : stopwords_(stopwords), options_(options) {}

  std::vector<ScoredCandidate> Run(std::string_view text);

 private:
  std::size_t TermFor(std::string_view word);
  void AddCooccurrence(std::size_t left, std::size_t right);
  void AddCandidate(const std::vector<BlockWord> &words);
  void ScoreTerms();
  void ScoreCandidate(Candidate &candidate) const;
  bool Valid(const Candidate &candidate) const;

  const StopwordSet &stopwords_;
  const YakeOptions &options_;
  std::vector<Term> terms_;
  std::unordered_map<std::string, std::size_t> term_index_;
  std::vector<Candidate> candidates_;
  std::unordered_map<std::string, std::size_t> candidate_index_;
  std::size_t sentence_count_ = 0;
};

std::size_t Extractor::TermFor(std::string_view word) {
  std::string unique = Lower(word);
  const bool plain_stopword = stopwords_.contains(unique);
  if (unique.size() > 3 && unique.back() == 's') unique.pop_back();
  if (auto it = term_index_.find(unique); it != term_index_.end()) {
    return it->second;
  }
  std::string letters;
  for (char c : unique) {
    if (!IsPunct(c)) letters.push_back(c);
  }
  Term term;
  term.unique = unique;
  term.stopword = plain_stopword || stopwords_.contains(unique) ||
                  CodePoints(letters) < 3;
  terms_.push_back(std::move(term));
  term_index_.emplace(std::move(unique), terms_.size() - 1);
  return terms_.size() - 1;
}

void Extractor::AddCooccurrence(std::size_t left, std::size_t right) {
  terms_[left].right[right] += 1.0;
  terms_[right].left[left] += 1.0;
}

void Extractor::AddCandidate(const std::vector<BlockWord> &words) {
  std::string unique;
  std::string tags;
  for (const BlockWord &w : words) {
    if (!unique.empty()) unique.push_back(' ');
    unique += Lower(w.surface);
    tags.push_back(w.tag);
  }
  auto [it, inserted] = candidate_index_.try_emplace(unique, candidates_.size());
  if (inserted) {
    Candidate candidate;
    candidate.unique = unique;
    for (const BlockWord &w : words) candidate.terms.push_back(w.term);
    candidates_.push_back(std::move(candidate));
  }
  Candidate &candidate = candidates_[it->second];
  candidate.tag_patterns.insert(tags);
  candidate.tf += 1.0;
}

void Extractor::ScoreTerms() {
  std::vector<double> tfs;
  double max_tf = 0.0;
  for (const Term &t : terms_) {
    max_tf = std::max(max_tf, t.tf);
    if (!t.stopword) tfs.push_back(t.tf);
  }
  if (tfs.empty()) return;
  const double n = static_cast<double>(tfs.size());
  const double mean = std::accumulate(tfs.begin(), tfs.end(), 0.0) / n;
  double variance = 0.0;
  for (double tf : tfs) variance += (tf - mean) * (tf - mean);
  const double stddev = std::sqrt(variance / n);

  for (Term &t : terms_) {
    auto dispersion = [](const std::map<std::size_t, double> &edges) {
      double total = 0.0;
      for (const auto &[id, count] : edges) total += count;
      return total == 0.0 ? 0.0 : static_cast<double>(edges.size()) / total;
    };
    const double rel = (0.5 + dispersion(t.left) * (t.tf / max_tf)) +
                       (0.5 + dispersion(t.right) * (t.tf / max_tf));
    const double freq = t.tf / (mean + stddev);
    const double spread = static_cast<double>(t.sentences.size()) /
                          static_cast<double>(sentence_count_);
    const double casing =
        std::max(t.tf_acronym, t.tf_proper) / (1.0 + std::log(t.tf));
    std::vector<std::size_t> ids(t.sentences.begin(), t.sentences.end());
    const std::size_t mid = ids.size() / 2;
    const double median =
        ids.size() % 2 == 1
            ? static_cast<double>(ids[mid])
            : (static_cast<double>(ids[mid - 1]) + static_cast<double>(ids[mid])) /
                  2.0;
    const double position = std::log(std::log(3.0 + median));
    t.h = (position * rel) / (casing + freq / rel + spread / rel);
  }
}

bool Extractor::Valid(const Candidate &candidate) const {
  const bool clean_pattern = std::any_of(
      candidate.tag_patterns.begin(), candidate.tag_patterns.end(),
      [](const std::string &tags) {
        return tags.find_first_of("ud") == std::string::npos;
      });
  if (!clean_pattern) return false;
  if (terms_[candidate.terms.front()].stopword ||
      terms_[candidate.terms.back()].stopword) {
    return false;
  }
  std::set<std::size_t> distinct(candidate.terms.begin(), candidate.terms.end());
  return distinct.size() == candidate.terms.size();
}

void Extractor::ScoreCandidate(Candidate &candidate) const {
  double sum = 0.0;
  double product = 1.0;
  const auto &ids = candidate.terms;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const Term &term = terms_[ids[i]];
    if (!term.stopword) {
      sum += term.h;
      product *= term.h;
      continue;
    }
    double p_left = 0.0;
    if (i > 0) {
      const Term &prev = terms_[ids[i - 1]];
      if (auto it = prev.right.find(ids[i]); it != prev.right.end()) {
        p_left = it->second / prev.tf;
      }
    }
    double p_right = 0.0;
    if (i + 1 < ids.size()) {
      const Term &next = terms_[ids[i + 1]];
      if (auto it = term.right.find(ids[i + 1]); it != term.right.end()) {
        p_right = it->second / next.tf;
      }
    }
    const double prob = p_left * p_right;
    product *= 1.0 + (1.0 - prob);
    sum -= 1.0 - prob;
  }
  candidate.h = product / ((sum + 1.0) * candidate.tf);
}

std::vector<ScoredCandidate> Extractor::Run(std::string_view text) {
  const auto sentences = SegmentSentences(text);
  sentence_count_ = sentences.size();
  std::size_t word_count = 0;
  const std::size_t n = options_.max_ngram;

  for (std::size_t sentence_id = 0; sentence_id < sentences.size();
       ++sentence_id) {
    std::vector<BlockWord> block;
    const auto &tokens = sentences[sentence_id];
    for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
      const std::string &word = tokens[pos];
      if (AllPunct(word)) {
        block.clear();
        continue;
      }
      ++word_count;
      const char tag = Tag(word, pos);
      const std::size_t id = TermFor(word);
      Term &term = terms_[id];
      term.tf += 1.0;
      term.sentences.insert(sentence_id);
      if (tag == 'a') term.tf_acronym += 1.0;
      if (tag == 'n') term.tf_proper += 1.0;

      if (tag != 'u' && tag != 'd') {
        const std::size_t from =
            block.size() > options_.window ? block.size() - options_.window : 0;
        for (std::size_t w = from; w < block.size(); ++w) {
          if (block[w].tag != 'u' && block[w].tag != 'd') {
            AddCooccurrence(block[w].term, id);
          }
        }
      }

      BlockWord current{tag, word, id};
      AddCandidate({current});
      std::vector<BlockWord> phrase{current};
      const std::size_t reach = n > 0 ? n - 1 : 0;
      const std::size_t lowest = block.size() > reach ? block.size() - reach : 0;
      for (std::size_t w = block.size(); w-- > lowest;) {
        phrase.insert(phrase.begin(), block[w]);
        AddCandidate(phrase);
      }
      block.push_back(std::move(current));
    }
  }
  if (word_count == 0) {
    throw Error(ErrorCode::kPrecondition, "document has no words");
  }
  if (word_count < n) {
    throw Error(ErrorCode::kPrecondition,
                "document has " + std::to_string(word_count) +
                    " words, fewer than the maximum n-gram length " +
                    std::to_string(n));
  }

  ScoreTerms();
  std::vector<Candidate *> ranked;
  for (Candidate &candidate : candidates_) {
    if (!Valid(candidate)) continue;
    ScoreCandidate(candidate);
    ranked.push_back(&candidate);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Candidate *a, const Candidate *b) {
                     return a->h < b->h;
                   });

  std::vector<const Candidate *> kept;
  for (const Candidate *candidate : ranked) {
    if (kept.size() >= options_.top) break;
    const bool duplicate =
        options_.dedup_threshold < 1.0 &&
        std::any_of(kept.begin(), kept.end(), [&](const Candidate *other) {
          return LevenshteinSimilarity(candidate->unique, other->unique) >
                 options_.dedup_threshold;
        });
    if (!duplicate) kept.push_back(candidate);
  }

  std::vector<ScoredCandidate> out;
  const double count = static_cast<double>(kept.size());
  for (std::size_t rank = 0; rank < kept.size(); ++rank) {
    out.push_back({kept[rank]->unique,
                   (count - static_cast<double>(rank)) / count, kept[rank]->h});
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> SegmentSentences(std::string_view text) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> current;
  std::string chunk;
  auto flush_chunk = [&] {
    if (chunk.empty()) return;
    bool ends = false;
    SplitChunk(chunk, current, ends);
    chunk.clear();
    if (ends && !current.empty()) {
      sentences.push_back(std::move(current));
      current.clear();
    }
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush_chunk();
    } else {
      chunk.push_back(c);
    }
  }
  flush_chunk();
  if (!current.empty()) sentences.push_back(std::move(current));
  return sentences;
}

double LevenshteinSimilarity(std::string_view a, std::string_view b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  std::vector<std::size_t> previous(b.size() + 1);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(previous.begin(), previous.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j - 1] + 1, previous[j] + 1, previous[j - 1] + cost});
    }
    std::swap(previous, row);
  }
  return 1.0 - static_cast<double>(previous[b.size()]) /
                   static_cast<double>(longest);
}

std::vector<ScoredCandidate> ExtractYakeKeywords(std::string_view text,
                                                 const StopwordSet &stopwords,
                                                 const YakeOptions &options) {
  if (options.max_ngram == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_ngram must be >= 1");
  }
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw Error(ErrorCode::kPrecondition, "empty document");
  }
  Extractor extractor(stopwords, options);
  return extractor.Run(text);
}

}  // namespace labeler
