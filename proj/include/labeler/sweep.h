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

#ifndef LABELER_SWEEP_H_
#define LABELER_SWEEP_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "labeler/corpus.h"
#include "labeler/evaluation.h"
#include "labeler/extraction.h"
#include "labeler/kmeans.h"
#include "labeler/labelspace.h"
#include "labeler/providers.h"

namespace labeler {

using Gold = std::map<std::string, std::string>;

struct KSweepRow {
  std::size_t k = 0;
  // Both averaged over seeds.
  double redundancy = 0.0;
  double coverage = 0.0;
};

// Rebuilds the label space for every k in `k_range` and seed in `seeds`
// (base.seed is ignored) from keywords extracted once, recording R and S^D.
// Throws kInvalidArgument for an empty range or seed list and kPrecondition
// when some k is outside [2, pooled keyword count].
std::vector<KSweepRow> SweepK(std::span<const KeywordSet> sets,
                              const ClusterParams &base,
                              std::span<const std::uint64_t> seeds,
                              std::span<const std::size_t> k_range,
                              Embedder &embedder, std::size_t threads = 0);

// One evaluation per threshold, in the given order. Throws kPrecondition if
// recall decreases as T increases, which would mean predictions are not
// nested.
std::vector<EvalReport> SweepThreshold(std::span<const KeywordSet> sets,
                                       const LabelSpace &space, const Gold &gold,
                                       std::span<const double> thresholds,
                                       UnlabeledPolicy policy,
                                       bool dedupe = true);

struct KeywordSweepRow {
  std::size_t keyword_count = 0;
  double f1 = 0.0;
};

// Re-extracts with keyword_count = c and candidate_pool = 2c for each c in
// `counts` (each within [1, 12]) and scores the assignments against a fixed
// space. Documents skipped at some c receive an empty prediction.
std::vector<KeywordSweepRow> SweepKeywords(
    const Corpus &corpus, const ExtractionParams &base,
    std::span<const std::size_t> counts, const LabelSpace &space,
    const Gold &gold, double threshold_percent, UnlabeledPolicy policy,
    const Providers &providers, std::size_t threads = 0);

struct AblationRow {
  double threshold_percent = 0.0;
  double f1_with = 0.0;
  double f1_without = 0.0;
};

// Extracts with and without metadata, otherwise identically, and scores
// both against a fixed space at every threshold.
std::vector<AblationRow> AblateMetadata(const Corpus &corpus,
                                        const ExtractionParams &base,
                                        const LabelSpace &space, const Gold &gold,
                                        std::span<const double> thresholds,
                                        UnlabeledPolicy policy,
                                        const Providers &providers,
                                        std::size_t threads = 0);

// Shortest decimal form that round-trips.
std::string FormatNumber(double value);

void WriteKSweepCsv(std::span<const KSweepRow> rows, std::ostream &out);
// Separate (k,R) and (k,S) tables for plotting.
void WriteRedundancyCsv(std::span<const KSweepRow> rows, std::ostream &out);
void WriteCoverageCsv(std::span<const KSweepRow> rows, std::ostream &out);
void WriteThresholdCsv(std::span<const EvalReport> rows, std::ostream &out);
void WriteKeywordCsv(std::span<const KeywordSweepRow> rows, std::ostream &out);
void WriteAblationCsv(std::span<const AblationRow> rows, std::ostream &out);

}  // namespace labeler

#endif  // LABELER_SWEEP_H_
