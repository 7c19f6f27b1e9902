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

#ifndef LABELER_YAKE_H_
#define LABELER_YAKE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "labeler/corpus.h"

namespace labeler {

// A ranked keyword candidate. `raw_score` is the statistical score (lower is
// better); `score` is the rank-normalized value (n - rank) / n in (0, 1],
// higher is better.
struct ScoredCandidate {
  std::string text;
  double score = 0.0;
  double raw_score = 0.0;
};

struct YakeOptions {
  std::size_t max_ngram = 3;
  // Co-occurrence window (words to the left) for the relatedness feature.
  std::size_t window = 1;
  // Candidates whose Levenshtein similarity to a better-ranked kept
  // candidate exceeds this are dropped. 1.0 disables deduplication.
  double dedup_threshold = 0.9;
  std::size_t top = 20;
};

// Unsupervised statistical keyword extraction. Single words are scored from
// five features: casing, position (median sentence index), frequency
// normalized by mean + std over non-stopwords, relatedness to context
// (distinct left/right neighbours per co-occurrence), and sentence spread:
//
//   H(w) = Pos * Rel / (Case + Freq / Rel + Spread / Rel)
//
// An n-gram of words w_1..w_m occurring tf times scores
//
//   H = prod H(w_i) / (tf * (1 + sum H(w_i)))
//
// where interior stopwords contribute through the bigram probability of
// their neighbours instead of their own H. Candidates are n-grams within a
// punctuation-free block that neither start nor end with a stopword, contain
// no number-like or mixed tokens, and do not repeat a word. Results are
// ordered best first; ties keep first-appearance order.
//
// Throws kPrecondition for empty text or text with fewer than `max_ngram`
// word tokens.
std::vector<ScoredCandidate> ExtractYakeKeywords(std::string_view text,
                                                 const StopwordSet &stopwords,
                                                 const YakeOptions &options);

// 1 - edit_distance(a, b) / max(|a|, |b|), over bytes.
double LevenshteinSimilarity(std::string_view a, std::string_view b);

// Sentence and word segmentation used by the extractor; exposed for tests.
std::vector<std::vector<std::string>> SegmentSentences(std::string_view text);

}  // namespace labeler

#endif  // LABELER_YAKE_H_
