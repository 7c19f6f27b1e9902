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

#include "labeler/sweep.h"

#include <charconv>
#include <cmath>
#include <optional>
#include <unordered_map>

#include "labeler/assigner.h"
#include "labeler/error.h"
#include "labeler/logging.h"
#include "labeler/parallel.h"
#include "labeler/spacemetrics.h"

namespace labeler {
namespace {

// Predictions for every document of the corpus, in corpus order; skipped
// documents get an empty label list.
std::vector<Prediction> PredictAll(const Corpus &corpus,
                                   const CorpusKeywords &keywords,
                                   const LabelSpace &space,
                                   const AssignmentParams &params) {
  std::vector<Prediction> assigned = AssignCorpus(keywords.sets, space, params);
  for (const std::string &id : keywords.skipped) {
    assigned.push_back({id, {}, 0});
  }
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    position[corpus.documents()[i].id] = i;
  }
  std::stable_sort(assigned.begin(), assigned.end(),
                   [&](const Prediction &a, const Prediction &b) {
                     return position[a.doc_id] < position[b.doc_id];
                   });
  return assigned;
}

}  // namespace

std::vector<KSweepRow> SweepK(std::span<const KeywordSet> sets,
                              const ClusterParams &base,
                              std::span<const std::uint64_t> seeds,
                              std::span<const std::size_t> k_range,
                              Embedder &embedder, std::size_t threads) {
  if (k_range.empty() || seeds.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "k sweep needs at least one k and one seed");
  }
  std::size_t points = 0;
  for (const KeywordSet &set : sets) points += set.keywords.size();
  for (std::size_t k : k_range) {
    if (k < 2 || k > points) {
      throw Error(ErrorCode::kPrecondition,
                  "k = " + std::to_string(k) + " outside [2, " +
                      std::to_string(points) + "]");
    }
  }
  const std::size_t runs = k_range.size() * seeds.size();
  std::vector<double> r(runs), s(runs);
  ParallelFor(runs, threads, [&](std::size_t i) {
    ClusterParams params = base;
    params.k = k_range[i / seeds.size()];
    params.seed = seeds[i % seeds.size()];
    const LabelSpace space = BuildLabelSpace(sets, params, embedder);
    r[i] = Redundancy(space).value;
    s[i] = Coverage(sets, space).corpus_value;
  });
  std::vector<KSweepRow> rows;
  for (std::size_t ki = 0; ki < k_range.size(); ++ki) {
    KSweepRow row{k_range[ki], 0.0, 0.0};
    for (std::size_t si = 0; si < seeds.size(); ++si) {
      row.redundancy += r[ki * seeds.size() + si];
      row.coverage += s[ki * seeds.size() + si];
    }
    row.redundancy /= static_cast<double>(seeds.size());
    row.coverage /= static_cast<double>(seeds.size());
    rows.push_back(row);
  }
  return rows;
}

std::vector<EvalReport> SweepThreshold(std::span<const KeywordSet> sets,
                                       const LabelSpace &space, const Gold &gold,
                                       std::span<const double> thresholds,
                                       UnlabeledPolicy policy, bool dedupe) {
  if (thresholds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "threshold set is empty");
  }
  std::vector<EvalReport> rows;
  for (double t : thresholds) {
    const std::vector<Prediction> predictions =
        AssignCorpus(sets, space, AssignmentParams{t, dedupe});
    rows.push_back(Evaluate(predictions, gold, policy, t));
  }
  for (const EvalReport &a : rows) {
    for (const EvalReport &b : rows) {
      if (*a.threshold_percent < *b.threshold_percent && b.recall < a.recall) {
        throw Error(ErrorCode::kPrecondition,
                    "recall fell from " + FormatNumber(a.recall) + " at T = " +
                        FormatNumber(*a.threshold_percent) + " to " +
                        FormatNumber(b.recall) + " at T = " +
                        FormatNumber(*b.threshold_percent));
      }
    }
  }
  return rows;
}

std::vector<KeywordSweepRow> SweepKeywords(
    const Corpus &corpus, const ExtractionParams &base,
    std::span<const std::size_t> counts, const LabelSpace &space,
    const Gold &gold, double threshold_percent, UnlabeledPolicy policy,
    const Providers &providers, std::size_t threads) {
  if (counts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "keyword-count range is empty");
  }
  for (std::size_t c : counts) {
    if (c < 1 || c > 12) {
      throw Error(ErrorCode::kInvalidArgument,
                  "keyword count " + std::to_string(c) + " outside [1, 12]");
    }
  }
  std::vector<KeywordSweepRow> rows;
  for (std::size_t c : counts) {
    ExtractionParams params = base;
    params.keyword_count = c;
    params.candidate_pool = 2 * c;
    const CorpusKeywords keywords = ExtractCorpus(corpus, params, providers, threads);
    const std::vector<Prediction> predictions = PredictAll(
        corpus, keywords, space, AssignmentParams{threshold_percent, true});
    rows.push_back({c, Evaluate(predictions, gold, policy, threshold_percent).f1});
  }
  return rows;
}

std::vector<AblationRow> AblateMetadata(const Corpus &corpus,
                                        const ExtractionParams &base,
                                        const LabelSpace &space, const Gold &gold,
                                        std::span<const double> thresholds,
                                        UnlabeledPolicy policy,
                                        const Providers &providers,
                                        std::size_t threads) {
  if (thresholds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "threshold set is empty");
  }
  ExtractionParams with = base;
  with.use_metadata = true;
  ExtractionParams without = base;
  without.use_metadata = false;
  const CorpusKeywords kw_with = ExtractCorpus(corpus, with, providers, threads);
  const CorpusKeywords kw_without =
      ExtractCorpus(corpus, without, providers, threads);
  std::vector<AblationRow> rows;
  for (double t : thresholds) {
    const AssignmentParams params{t, true};
    rows.push_back(
        {t,
         Evaluate(PredictAll(corpus, kw_with, space, params), gold, policy, t).f1,
         Evaluate(PredictAll(corpus, kw_without, space, params), gold, policy, t)
             .f1});
  }
  return rows;
}

std::string FormatNumber(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

void WriteKSweepCsv(std::span<const KSweepRow> rows, std::ostream &out) {
  out << "k,R,S\n";
  for (const KSweepRow &row : rows) {
    out << row.k << ',' << FormatNumber(row.redundancy) << ','
        << FormatNumber(row.coverage) << '\n';
  }
}

void WriteRedundancyCsv(std::span<const KSweepRow> rows, std::ostream &out) {
  out << "k,R\n";
  for (const KSweepRow &row : rows) {
    out << row.k << ',' << FormatNumber(row.redundancy) << '\n';
  }
}

void WriteCoverageCsv(std::span<const KSweepRow> rows, std::ostream &out) {
  out << "k,S\n";
  for (const KSweepRow &row : rows) {
    out << row.k << ',' << FormatNumber(row.coverage) << '\n';
  }
}

void WriteThresholdCsv(std::span<const EvalReport> rows, std::ostream &out) {
  out << "T,precision,recall,f1\n";
  for (const EvalReport &row : rows) {
    out << FormatNumber(row.threshold_percent.value_or(0.0)) << ','
        << FormatNumber(row.precision) << ',' << FormatNumber(row.recall) << ','
        << FormatNumber(row.f1) << '\n';
  }
}

void WriteKeywordCsv(std::span<const KeywordSweepRow> rows, std::ostream &out) {
  out << "c,f1\n";
  for (const KeywordSweepRow &row : rows) {
    out << row.keyword_count << ',' << FormatNumber(row.f1) << '\n';
  }
}

void WriteAblationCsv(std::span<const AblationRow> rows, std::ostream &out) {
  out << "T,f1_with,f1_without\n";
  for (const AblationRow &row : rows) {
    out << FormatNumber(row.threshold_percent) << ',' << FormatNumber(row.f1_with)
        << ',' << FormatNumber(row.f1_without) << '\n';
  }
}

}  // namespace labeler
