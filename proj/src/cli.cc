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

#include "labeler/cli.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "labeler/annotate.h"
#include "labeler/assigner.h"
#include "labeler/corpus.h"
#include "labeler/error.h"
#include "labeler/evaluation.h"
#include "labeler/extraction.h"
#include "labeler/hashing.h"
#include "labeler/io.h"
#include "labeler/labelspace.h"
#include "labeler/logging.h"
#include "labeler/mock_server.h"
#include "labeler/providers.h"
#include "labeler/spacemetrics.h"
#include "labeler/sweep.h"
#include "labeler/version.h"

namespace labeler {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Options shared by every subcommand.
struct GlobalOptions {
  std::string providers;
  std::string embed_endpoint = "mock";
  std::string metadata_endpoint = "mock";
  int timeout_ms = 30000;
  int retries = 2;
  std::string cache;
  std::string bearer_token;
  std::size_t threads = 0;
  std::string log_level = "info";
  std::string stopwords;
};

struct ExtractionFlags {
  std::size_t keywords = 5;
  std::size_t pool = 0;  // 0: twice the keyword count
  std::size_t max_ngram = 3;
  double lambda = 0.7;
  std::string metadata = "on";
  std::string query = "clean";

  ExtractionParams Params() const {
    ExtractionParams p;
    p.keyword_count = keywords;
    p.candidate_pool = pool == 0 ? 2 * keywords : pool;
    p.max_ngram = max_ngram;
    p.mmr_lambda = lambda;
    p.use_metadata = metadata == "on";
    p.query_from_raw = query == "raw";
    p.Validate();
    return p;
  }
};

struct ClusterFlags {
  std::size_t k = 15;
  std::uint64_t seed = 42;
  std::size_t restarts = 8;
  std::size_t max_iters = 300;
  double tol = 1e-6;

  ClusterParams Params() const {
    ClusterParams p{k, seed, max_iters, tol, restarts};
    p.Validate();
    return p;
  }
};

void AddExtractionFlags(CLI::App *cmd, ExtractionFlags &f) {
  cmd->add_option("--keywords", f.keywords, "Keywords kept per document")
      ->capture_default_str();
  cmd->add_option("--pool", f.pool,
                  "Candidate pool size before MMR (default: 2 x keywords)");
  cmd->add_option("--max-ngram", f.max_ngram, "Longest keyword in words")
      ->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "MMR relevance weight in [0, 1]")
      ->capture_default_str();
  cmd->add_option("--metadata", f.metadata, "Enrich keywords with metadata")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  cmd->add_option("--query", f.query, "Text embedded as the MMR query")
      ->check(CLI::IsMember({"clean", "raw"}))
      ->capture_default_str();
}

void AddClusterFlags(CLI::App *cmd, ClusterFlags &f, bool with_k = true) {
  if (with_k) {
    cmd->add_option("--k", f.k, "Number of labels")->capture_default_str();
    cmd->add_option("--seed", f.seed, "k-means seed")->capture_default_str();
  }
  cmd->add_option("--restarts", f.restarts, "k-means restarts")
      ->capture_default_str();
  cmd->add_option("--max-iters", f.max_iters, "k-means iteration cap")
      ->capture_default_str();
  cmd->add_option("--tol", f.tol, "k-means centroid-shift tolerance")
      ->capture_default_str();
}

template <typename T>
T ParseNumber(const std::string &text) {
  T value{};
  std::istringstream in(text);
  in >> value;
  if (!in || !in.eof()) {
    throw Error(ErrorCode::kInvalidArgument, "not a number: '" + text + "'");
  }
  return value;
}

std::vector<std::string> SplitComma(const std::string &text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, ',')) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

// "2-28", "1,2,5" or a mix such as "1-3,8".
std::vector<std::size_t> ParseRange(const std::string &text) {
  std::vector<std::size_t> out;
  for (const std::string &part : SplitComma(text)) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(ParseNumber<std::size_t>(part));
      continue;
    }
    const auto lo = ParseNumber<std::size_t>(part.substr(0, dash));
    const auto hi = ParseNumber<std::size_t>(part.substr(dash + 1));
    if (hi < lo) {
      throw Error(ErrorCode::kInvalidArgument, "empty range '" + part + "'");
    }
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty list '" + text + "'");
  }
  return out;
}

std::vector<double> ParseDoubles(const std::string &text) {
  std::vector<double> out;
  for (const std::string &part : SplitComma(text)) {
    out.push_back(ParseNumber<double>(part));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty list '" + text + "'");
  }
  return out;
}

std::vector<std::uint64_t> ParseSeeds(const std::string &text) {
  std::vector<std::uint64_t> out;
  for (const std::string &part : SplitComma(text)) {
    out.push_back(ParseNumber<std::uint64_t>(part));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty seed list");
  }
  return out;
}

std::string FileHash(const fs::path &path) {
  return Sha256Hex(ReadTextFile(path));
}

// Provenance sidecar for artifacts that cannot carry their own.
void WriteMeta(const fs::path &artifact, const json &meta) {
  fs::path path = artifact;
  path += ".meta.json";
  WriteJsonFile(path, meta);
}

void WriteTextArtifact(const fs::path &path, const std::string &text,
                       const json &meta) {
  WriteTextFile(path, text);
  WriteMeta(path, meta);
}

class Session {
 public:
  Session(const GlobalOptions &g, std::istream &in, std::ostream &out,
          std::ostream &err)
      : g_(g), in_(in), out_(out), err_(err) {}

  std::istream &in() { return in_; }
  std::ostream &out() { return out_; }
  std::ostream &err() { return err_; }
  std::size_t threads() const { return g_.threads; }

  ProviderConfig Config() const {
    ProviderConfig c;
    c.embed_endpoint = g_.embed_endpoint;
    c.metadata_endpoint = g_.metadata_endpoint;
    if (g_.providers == "mock") {
      c.embed_endpoint = "mock";
      c.metadata_endpoint = "mock";
    }
    if (const char *url = std::getenv("AI_EMBED_URL"); url && *url) {
      c.embed_endpoint = url;
    }
    if (const char *url = std::getenv("AI_METADATA_URL"); url && *url) {
      c.metadata_endpoint = url;
    }
    c.timeout = std::chrono::milliseconds(g_.timeout_ms);
    c.retry_count = g_.retries;
    if (!g_.cache.empty()) c.cache_path = fs::path(g_.cache);
    c.bearer_token = g_.bearer_token;
    c.Validate();
    return c;
  }

  const Providers &providers() {
    if (!providers_) providers_ = MakeProviders(Config());
    return *providers_;
  }

  StopwordSet Stopwords() const {
    return g_.stopwords.empty() ? DefaultDomainStopwords()
                                : LoadStopwords(g_.stopwords);
  }

  // Raw or already-ingested corpus files are both accepted.
  Corpus LoadCorpus(const std::string &path) const {
    IngestOptions options;
    options.trust_clean_text = true;
    return Ingest(path, Stopwords(), options);
  }

  json ProviderIdentity() {
    return {{"embedder", providers().embedder->identity()},
            {"metadata", providers().metadata->identity()}};
  }

 private:
  const GlobalOptions &g_;
  std::istream &in_;
  std::ostream &out_;
  std::ostream &err_;
  std::optional<Providers> providers_;
};

json BaseMeta(const std::string &command) {
  return {{"tool", kToolName}, {"version", kVersion}, {"command", command}};
}

std::map<std::string, std::string> LoadGold(const std::string &annotations,
                                            const LabelSpace *space) {
  if (!fs::exists(annotations)) {
    throw Error(ErrorCode::kNotFound,
                "annotations file '" + annotations + "' not found");
  }
  AnnotationStore store(annotations);
  if (space) return store.GoldFor(space->Id());
  const auto ids = store.SpaceIds();
  if (ids.size() > 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "annotations cover " + std::to_string(ids.size()) +
                    " label spaces; pass --space to choose one");
  }
  return ids.empty() ? std::map<std::string, std::string>{}
                     : store.GoldFor(ids.front());
}

}  // namespace

int RunCli(const std::vector<std::string> &args, std::istream &in,
           std::ostream &out, std::ostream &err) {
  CLI::App app{"Induce a label space from abstracts and assign labels.",
               kToolName};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "Settings file (TOML-like key = value)");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--providers", g.providers,
                 "Shorthand: 'mock' uses the offline providers for both")
      ->check(CLI::IsMember({"mock"}));
  app.add_option("--embed-endpoint", g.embed_endpoint,
                 "Embedding service base URL, or 'mock'")
      ->capture_default_str();
  app.add_option("--metadata-endpoint", g.metadata_endpoint,
                 "Metadata service base URL, 'mock' or 'mock-echo'")
      ->capture_default_str();
  app.add_option("--timeout-ms", g.timeout_ms, "Provider request timeout")
      ->capture_default_str();
  app.add_option("--retries", g.retries, "Provider retries")
      ->capture_default_str();
  app.add_option("--cache", g.cache, "Persistent embedding cache (JSONL)");
  app.add_option("--bearer-token", g.bearer_token,
                 "Static bearer token for HTTP providers");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--log-level", g.log_level, "debug, info, warning or error")
      ->check(CLI::IsMember({"debug", "info", "warning", "error"}))
      ->capture_default_str();
  app.add_option("--stopwords", g.stopwords,
                 "Domain stopword file (default: the bundled list)");

  // ingest
  struct {
    std::string input, out;
    bool include_title = false;
  } ingest;
  auto *ingest_cmd = app.add_subcommand("ingest", "Preprocess a JSONL corpus");
  ingest_cmd->add_option("--input", ingest.input, "Corpus JSONL")->required();
  ingest_cmd->add_option("--out", ingest.out, "Output corpus JSONL")->required();
  ingest_cmd->add_flag("--include-title", ingest.include_title,
                       "Prepend titles to abstracts before preprocessing");

  // split
  struct {
    std::string corpus, train_out, test_out;
    double fraction = 0.1;
    std::uint64_t seed = 42;
  } split;
  auto *split_cmd = app.add_subcommand("split", "Seeded train/test split");
  split_cmd->add_option("--corpus", split.corpus, "Corpus JSONL")->required();
  split_cmd->add_option("--fraction", split.fraction, "Test fraction in (0, 1)")
      ->capture_default_str();
  split_cmd->add_option("--seed", split.seed, "Shuffle seed")->capture_default_str();
  split_cmd->add_option("--train-out", split.train_out, "Train side JSONL")
      ->required();
  split_cmd->add_option("--test-out", split.test_out, "Test side JSONL")->required();

  // extract
  struct {
    std::string corpus, out;
    ExtractionFlags flags;
  } extract;
  auto *extract_cmd = app.add_subcommand("extract", "Extract keywords per document");
  extract_cmd->add_option("--corpus", extract.corpus, "Corpus JSONL")->required();
  extract_cmd->add_option("--out", extract.out, "Keywords JSONL")->required();
  AddExtractionFlags(extract_cmd, extract.flags);

  // labelspace
  struct {
    std::string corpus, out, keywords_out;
    ExtractionFlags extraction;
    ClusterFlags cluster;
  } space;
  auto *space_cmd = app.add_subcommand("labelspace", "Generate a label space");
  space_cmd->add_option("--corpus", space.corpus, "Corpus JSONL")->required();
  space_cmd->add_option("--out", space.out, "Label space JSON")->required();
  space_cmd->add_option("--keywords-out", space.keywords_out,
                        "Also write the extracted keywords");
  AddExtractionFlags(space_cmd, space.extraction);
  AddClusterFlags(space_cmd, space.cluster);

  // metrics
  struct {
    std::string space, keywords, out, emit_csv;
  } metrics;
  auto *metrics_cmd = app.add_subcommand("metrics", "Redundancy and coverage");
  metrics_cmd->add_option("--space", metrics.space, "Label space JSON")->required();
  metrics_cmd->add_option("--keywords", metrics.keywords, "Keywords JSONL")
      ->required();
  metrics_cmd->add_option("--out", metrics.out, "Report JSON")->required();
  metrics_cmd->add_option("--emit-csv", metrics.emit_csv,
                          "Write <prefix>_R.csv (k,R) and <prefix>_S.csv (k,S)");

  // assign
  struct {
    std::string space, keywords, out;
    double threshold = 1.0;
    bool no_dedupe = false;
  } assign;
  auto *assign_cmd = app.add_subcommand("assign", "Predict labels per document");
  assign_cmd->add_option("--space", assign.space, "Label space JSON")->required();
  assign_cmd->add_option("--keywords", assign.keywords, "Keywords JSONL")
      ->required();
  assign_cmd->add_option("--threshold", assign.threshold,
                         "Percent of coverage entries retained, in (0, 100]")
      ->capture_default_str();
  assign_cmd->add_flag("--no-dedupe", assign.no_dedupe,
                       "Keep repeated labels among retained entries");
  assign_cmd->add_option("--out", assign.out, "Predictions JSONL")->required();

  // annotate
  struct {
    std::string corpus, space, store, annotator = "anonymous";
  } annotate;
  auto *annotate_cmd =
      app.add_subcommand("annotate", "Interactively annotate documents");
  annotate_cmd->add_option("--corpus", annotate.corpus, "Corpus JSONL")->required();
  annotate_cmd->add_option("--space", annotate.space, "Label space JSON")
      ->required();
  annotate_cmd->add_option("--store", annotate.store, "Annotation store JSONL")
      ->required();
  annotate_cmd->add_option("--annotator", annotate.annotator, "Annotator name")
      ->capture_default_str();

  // evaluate
  struct {
    std::string predictions, annotations, space, out, unlabeled = "exclude";
  } evaluate;
  auto *evaluate_cmd = app.add_subcommand("evaluate", "Score predictions");
  evaluate_cmd->add_option("--predictions", evaluate.predictions,
                           "Predictions JSONL")
      ->required();
  evaluate_cmd->add_option("--annotations", evaluate.annotations,
                           "Annotation store JSONL")
      ->required();
  evaluate_cmd->add_option("--space", evaluate.space,
                           "Use annotations made against this label space");
  evaluate_cmd->add_option("--unlabeled", evaluate.unlabeled,
                           "How UNLABELED documents score")
      ->check(CLI::IsMember({"exclude", "count-as-miss"}))
      ->capture_default_str();
  evaluate_cmd->add_option("--out", evaluate.out, "Report JSON")->required();

  // sweep
  auto *sweep_cmd = app.add_subcommand("sweep", "Parameter sweeps");
  sweep_cmd->require_subcommand(1);

  struct {
    std::string corpus, csv, emit_csv, k_range = "2-28", seeds = "42";
    ExtractionFlags extraction;
    ClusterFlags cluster;
  } sweep_k;
  auto *sweep_k_cmd = sweep_cmd->add_subcommand("k", "Sweep the label count");
  sweep_k_cmd->add_option("--corpus", sweep_k.corpus, "Corpus JSONL")->required();
  sweep_k_cmd->add_option("--k-range", sweep_k.k_range, "e.g. 2-28")
      ->capture_default_str();
  sweep_k_cmd->add_option("--seeds", sweep_k.seeds, "Comma-separated seeds")
      ->capture_default_str();
  sweep_k_cmd->add_option("--csv", sweep_k.csv, "Output CSV (k,R,S)")->required();
  sweep_k_cmd->add_option("--emit-csv", sweep_k.emit_csv,
                          "Also write <prefix>_R.csv and <prefix>_S.csv");
  AddExtractionFlags(sweep_k_cmd, sweep_k.extraction);
  AddClusterFlags(sweep_k_cmd, sweep_k.cluster, false);

  struct {
    std::string space, keywords, annotations, csv,
        thresholds = "1,5,10,15,20", unlabeled = "exclude";
  } sweep_t;
  auto *sweep_t_cmd =
      sweep_cmd->add_subcommand("threshold", "Sweep the threshold T");
  sweep_t_cmd->add_option("--space", sweep_t.space, "Label space JSON")->required();
  sweep_t_cmd->add_option("--keywords", sweep_t.keywords, "Keywords JSONL")
      ->required();
  sweep_t_cmd->add_option("--annotations", sweep_t.annotations,
                          "Annotation store JSONL")
      ->required();
  sweep_t_cmd->add_option("--thresholds", sweep_t.thresholds, "Percentages")
      ->capture_default_str();
  sweep_t_cmd->add_option("--unlabeled", sweep_t.unlabeled,
                          "How UNLABELED documents score")
      ->check(CLI::IsMember({"exclude", "count-as-miss"}))
      ->capture_default_str();
  sweep_t_cmd->add_option("--csv", sweep_t.csv, "Output CSV")->required();

  struct {
    std::string corpus, space, annotations, csv, c_range = "1-12",
        unlabeled = "exclude";
    double threshold = 1.0;
    ExtractionFlags extraction;
  } sweep_c;
  auto *sweep_c_cmd =
      sweep_cmd->add_subcommand("keywords", "Sweep the keyword count");
  sweep_c_cmd->add_option("--corpus", sweep_c.corpus, "Corpus JSONL")->required();
  sweep_c_cmd->add_option("--space", sweep_c.space, "Label space JSON")->required();
  sweep_c_cmd->add_option("--annotations", sweep_c.annotations,
                          "Annotation store JSONL")
      ->required();
  sweep_c_cmd->add_option("--c-range", sweep_c.c_range, "e.g. 1-12")
      ->capture_default_str();
  sweep_c_cmd->add_option("--threshold", sweep_c.threshold, "Percent T")
      ->capture_default_str();
  sweep_c_cmd->add_option("--unlabeled", sweep_c.unlabeled,
                          "How UNLABELED documents score")
      ->check(CLI::IsMember({"exclude", "count-as-miss"}))
      ->capture_default_str();
  sweep_c_cmd->add_option("--csv", sweep_c.csv, "Output CSV (c,f1)")->required();
  AddExtractionFlags(sweep_c_cmd, sweep_c.extraction);

  struct {
    std::string corpus, space, annotations, csv, thresholds = "1,5,10,15,20",
        unlabeled = "exclude";
    ExtractionFlags extraction;
  } sweep_a;
  auto *sweep_a_cmd =
      sweep_cmd->add_subcommand("ablation", "F1 with and without metadata");
  sweep_a_cmd->add_option("--corpus", sweep_a.corpus, "Corpus JSONL")->required();
  sweep_a_cmd->add_option("--space", sweep_a.space, "Label space JSON")->required();
  sweep_a_cmd->add_option("--annotations", sweep_a.annotations,
                          "Annotation store JSONL")
      ->required();
  sweep_a_cmd->add_option("--thresholds", sweep_a.thresholds, "Percentages")
      ->capture_default_str();
  sweep_a_cmd->add_option("--unlabeled", sweep_a.unlabeled,
                          "How UNLABELED documents score")
      ->check(CLI::IsMember({"exclude", "count-as-miss"}))
      ->capture_default_str();
  sweep_a_cmd->add_option("--csv", sweep_a.csv, "Output CSV")->required();
  AddExtractionFlags(sweep_a_cmd, sweep_a.extraction);

  // serve-mock
  struct {
    std::string host = "127.0.0.1", mode = "context";
    int port = 8080;
  } serve;
  auto *serve_cmd =
      app.add_subcommand("serve-mock", "Serve the mock providers over HTTP");
  serve_cmd->add_option("--host", serve.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "Port (0 picks a free one)")
      ->capture_default_str();
  serve_cmd->add_option("--mode", serve.mode, "Metadata mode")
      ->check(CLI::IsMember({"context", "echo"}))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  SetLogSink(&err);
  SetLogLevel(ParseLogLevel(g.log_level));
  struct SinkReset {
    ~SinkReset() { SetLogSink(&std::cerr); }
  } sink_reset;
  Session session(g, in, out, err);
  std::string command;
  try {
    if (*ingest_cmd) {
      command = "ingest";
      IngestOptions options;
      options.include_title = ingest.include_title;
      const StopwordSet stopwords = session.Stopwords();
      const Corpus corpus = Ingest(ingest.input, stopwords, options);
      WriteCorpus(corpus, fs::path(ingest.out));
      json meta = BaseMeta(command);
      meta["inputs"] = {{"corpus_file", FileHash(ingest.input)}};
      meta["corpus_sha256"] = corpus.ContentHash();
      meta["include_title"] = ingest.include_title;
      WriteMeta(ingest.out, meta);
      std::size_t flagged = 0;
      for (const Document &d : corpus.documents()) flagged += d.flagged_empty();
      LogInfo("ingested", {{"documents", corpus.size()}, {"flagged_empty", flagged}});
    } else if (*split_cmd) {
      command = "split";
      const Corpus corpus = session.LoadCorpus(split.corpus);
      const auto [train, test] = Split(corpus, {split.seed, split.fraction});
      WriteCorpus(train, fs::path(split.train_out));
      WriteCorpus(test, fs::path(split.test_out));
      json meta = BaseMeta(command);
      meta["corpus_sha256"] = corpus.ContentHash();
      meta["seed"] = split.seed;
      meta["test_fraction"] = split.fraction;
      WriteMeta(split.train_out, meta);
      WriteMeta(split.test_out, meta);
      LogInfo("split", {{"train", train.size()}, {"test", test.size()}});
    } else if (*extract_cmd) {
      command = "extract";
      const ExtractionParams params = extract.flags.Params();
      const Corpus corpus = session.LoadCorpus(extract.corpus);
      const Providers &providers = session.providers();
      const CorpusKeywords keywords =
          ExtractCorpus(corpus, params, providers, session.threads());
      WriteKeywords(keywords.sets, fs::path(extract.out));
      json meta = MakeProvenance(corpus, params, providers);
      meta["command"] = command;
      meta["skipped_documents"] = keywords.skipped;
      WriteMeta(extract.out, meta);
      LogInfo("extracted", {{"documents", keywords.sets.size()},
                            {"skipped", keywords.skipped.size()}});
    } else if (*space_cmd) {
      command = "labelspace";
      const ExtractionParams extraction = space.extraction.Params();
      const ClusterParams cluster = space.cluster.Params();
      const Corpus corpus = session.LoadCorpus(space.corpus);
      const Providers &providers = session.providers();
      GeneratedSpace generated = GenerateLabelSpace(corpus, extraction, cluster,
                                                    providers, session.threads());
      generated.space.Save(space.out);
      if (!space.keywords_out.empty()) {
        WriteKeywords(generated.keywords.sets, fs::path(space.keywords_out));
        json meta = MakeProvenance(corpus, extraction, providers);
        meta["command"] = "extract";
        meta["skipped_documents"] = generated.keywords.skipped;
        WriteMeta(space.keywords_out, meta);
      }
      LogInfo("label_space", {{"k", cluster.k}, {"names", generated.space.Names()}});
    } else if (*metrics_cmd) {
      command = "metrics";
      const LabelSpace labels = LabelSpace::Load(metrics.space);
      const auto keywords = ReadKeywords(fs::path(metrics.keywords));
      const RedundancyReport r = Redundancy(labels);
      const CoverageReport s = Coverage(keywords, labels);
      json report = r.ToJson();
      report["k"] = labels.size();
      report["argmax_names"] = {labels.labels()[r.argmax_pair.first].name,
                                labels.labels()[r.argmax_pair.second].name};
      report.update(s.ToJson());
      report["provenance"] = BaseMeta(command);
      report["provenance"]["inputs"] = {{"space", FileHash(metrics.space)},
                                        {"keywords", FileHash(metrics.keywords)}};
      WriteJsonFile(metrics.out, report);
      if (!metrics.emit_csv.empty()) {
        const KSweepRow row{labels.size(), r.value, s.corpus_value};
        std::ostringstream r_csv, s_csv;
        WriteRedundancyCsv(std::span(&row, 1), r_csv);
        WriteCoverageCsv(std::span(&row, 1), s_csv);
        WriteTextArtifact(metrics.emit_csv + "_R.csv", r_csv.str(),
                          report["provenance"]);
        WriteTextArtifact(metrics.emit_csv + "_S.csv", s_csv.str(),
                          report["provenance"]);
      }
      LogInfo("metrics", {{"R", r.value}, {"S_D", s.corpus_value}});
    } else if (*assign_cmd) {
      command = "assign";
      const AssignmentParams params{assign.threshold, !assign.no_dedupe};
      params.Validate();
      const LabelSpace labels = LabelSpace::Load(assign.space);
      const auto keywords = ReadKeywords(fs::path(assign.keywords));
      const auto predictions = AssignCorpus(keywords, labels, params);
      WritePredictions(predictions, fs::path(assign.out));
      json meta = BaseMeta(command);
      meta["params"] = params.ToJson();
      meta["inputs"] = {{"space", FileHash(assign.space)},
                        {"keywords", FileHash(assign.keywords)}};
      WriteMeta(assign.out, meta);
      LogInfo("assigned", {{"documents", predictions.size()},
                           {"threshold_percent", params.threshold_percent}});
    } else if (*annotate_cmd) {
      command = "annotate";
      const Corpus corpus = session.LoadCorpus(annotate.corpus);
      const LabelSpace labels = LabelSpace::Load(annotate.space);
      AnnotationStore store(annotate.store);
      AnnotateOptions options;
      options.annotator = annotate.annotator;
      const AnnotateSummary summary =
          RunAnnotation(corpus, labels, store, session.in(), session.out(), options);
      LogInfo("annotated", {{"labeled", summary.labeled},
                            {"unlabeled", summary.unlabeled},
                            {"resumed", summary.resumed},
                            {"quit", summary.quit}});
    } else if (*evaluate_cmd) {
      command = "evaluate";
      const UnlabeledPolicy policy = ParseUnlabeledPolicy(evaluate.unlabeled);
      std::optional<LabelSpace> labels;
      if (!evaluate.space.empty()) labels = LabelSpace::Load(evaluate.space);
      const auto gold =
          LoadGold(evaluate.annotations, labels ? &*labels : nullptr);
      const auto predictions = ReadPredictions(fs::path(evaluate.predictions));
      std::optional<double> threshold;
      const fs::path meta_path = evaluate.predictions + ".meta.json";
      if (fs::exists(meta_path)) {
        const json meta = ReadJsonFile(meta_path);
        if (meta.contains("params") && meta["params"].contains("threshold_percent")) {
          threshold = meta["params"]["threshold_percent"].get<double>();
        }
      }
      const EvalReport report = Evaluate(predictions, gold, policy, threshold);
      json j = report.ToJson();
      j["unlabeled_policy"] = UnlabeledPolicyName(policy);
      j["provenance"] = BaseMeta(command);
      j["provenance"]["inputs"] = {{"predictions", FileHash(evaluate.predictions)},
                                   {"annotations", FileHash(evaluate.annotations)}};
      WriteJsonFile(evaluate.out, j);
      LogInfo("evaluated", {{"precision", report.precision},
                            {"recall", report.recall},
                            {"f1", report.f1}});
    } else if (*sweep_k_cmd) {
      command = "sweep k";
      const ExtractionParams extraction = sweep_k.extraction.Params();
      ClusterFlags cluster_flags = sweep_k.cluster;
      cluster_flags.k = 1;
      const ClusterParams base = cluster_flags.Params();
      const auto k_range = ParseRange(sweep_k.k_range);
      const auto seeds = ParseSeeds(sweep_k.seeds);
      const Corpus corpus = session.LoadCorpus(sweep_k.corpus);
      const Providers &providers = session.providers();
      const CorpusKeywords keywords =
          ExtractCorpus(corpus, extraction, providers, session.threads());
      const auto rows = SweepK(keywords.sets, base, seeds, k_range,
                               *providers.embedder, session.threads());
      json meta = MakeProvenance(corpus, extraction, providers);
      meta["command"] = command;
      json cluster_json = base.ToJson();
      cluster_json.erase("k");
      cluster_json.erase("seed");
      meta["cluster"] = cluster_json;
      meta["seeds"] = seeds;
      meta["k_range"] = k_range;
      std::ostringstream csv;
      WriteKSweepCsv(rows, csv);
      WriteTextArtifact(sweep_k.csv, csv.str(), meta);
      if (!sweep_k.emit_csv.empty()) {
        std::ostringstream r_csv, s_csv;
        WriteRedundancyCsv(rows, r_csv);
        WriteCoverageCsv(rows, s_csv);
        WriteTextArtifact(sweep_k.emit_csv + "_R.csv", r_csv.str(), meta);
        WriteTextArtifact(sweep_k.emit_csv + "_S.csv", s_csv.str(), meta);
      }
      LogInfo("sweep_k", {{"rows", rows.size()}});
    } else if (*sweep_t_cmd) {
      command = "sweep threshold";
      const auto thresholds = ParseDoubles(sweep_t.thresholds);
      const UnlabeledPolicy policy = ParseUnlabeledPolicy(sweep_t.unlabeled);
      const LabelSpace labels = LabelSpace::Load(sweep_t.space);
      const auto keywords = ReadKeywords(fs::path(sweep_t.keywords));
      const auto gold = LoadGold(sweep_t.annotations, &labels);
      const auto rows = SweepThreshold(keywords, labels, gold, thresholds, policy);
      json meta = BaseMeta(command);
      meta["thresholds"] = thresholds;
      meta["unlabeled_policy"] = UnlabeledPolicyName(policy);
      meta["inputs"] = {{"space", FileHash(sweep_t.space)},
                        {"keywords", FileHash(sweep_t.keywords)},
                        {"annotations", FileHash(sweep_t.annotations)}};
      std::ostringstream csv;
      WriteThresholdCsv(rows, csv);
      WriteTextArtifact(sweep_t.csv, csv.str(), meta);
      LogInfo("sweep_threshold", {{"rows", rows.size()}});
    } else if (*sweep_c_cmd) {
      command = "sweep keywords";
      const ExtractionParams base = sweep_c.extraction.Params();
      const auto counts = ParseRange(sweep_c.c_range);
      const UnlabeledPolicy policy = ParseUnlabeledPolicy(sweep_c.unlabeled);
      const Corpus corpus = session.LoadCorpus(sweep_c.corpus);
      const LabelSpace labels = LabelSpace::Load(sweep_c.space);
      const auto gold = LoadGold(sweep_c.annotations, &labels);
      const Providers &providers = session.providers();
      const auto rows =
          SweepKeywords(corpus, base, counts, labels, gold, sweep_c.threshold,
                        policy, providers, session.threads());
      json meta = MakeProvenance(corpus, base, providers);
      meta["command"] = command;
      meta["counts"] = counts;
      meta["threshold_percent"] = sweep_c.threshold;
      meta["unlabeled_policy"] = UnlabeledPolicyName(policy);
      meta["inputs"] = {{"space", FileHash(sweep_c.space)},
                        {"annotations", FileHash(sweep_c.annotations)}};
      std::ostringstream csv;
      WriteKeywordCsv(rows, csv);
      WriteTextArtifact(sweep_c.csv, csv.str(), meta);
      LogInfo("sweep_keywords", {{"rows", rows.size()}});
    } else if (*sweep_a_cmd) {
      command = "sweep ablation";
      const ExtractionParams base = sweep_a.extraction.Params();
      const auto thresholds = ParseDoubles(sweep_a.thresholds);
      const UnlabeledPolicy policy = ParseUnlabeledPolicy(sweep_a.unlabeled);
      const Corpus corpus = session.LoadCorpus(sweep_a.corpus);
      const LabelSpace labels = LabelSpace::Load(sweep_a.space);
      const auto gold = LoadGold(sweep_a.annotations, &labels);
      const Providers &providers = session.providers();
      const auto rows = AblateMetadata(corpus, base, labels, gold, thresholds,
                                       policy, providers, session.threads());
      json meta = MakeProvenance(corpus, base, providers);
      meta["command"] = command;
      meta["thresholds"] = thresholds;
      meta["unlabeled_policy"] = UnlabeledPolicyName(policy);
      meta["inputs"] = {{"space", FileHash(sweep_a.space)},
                        {"annotations", FileHash(sweep_a.annotations)}};
      std::ostringstream csv;
      WriteAblationCsv(rows, csv);
      WriteTextArtifact(sweep_a.csv, csv.str(), meta);
      LogInfo("sweep_ablation", {{"rows", rows.size()}});
    } else if (*serve_cmd) {
      command = "serve-mock";
      MockProviderServer server(serve.mode == "echo"
                                    ? MockMetadataProvider::Mode::kEcho
                                    : MockMetadataProvider::Mode::kContext);
      server.Bind(serve.host, serve.port);
      out << "serving mock providers at " << server.url() << std::endl;
      LogInfo("serving", {{"url", server.url()}});
      server.Run();
    }
  } catch (const Error &e) {
    Log(LogLevel::kError, "command_failed",
        {{"command", command},
         {"code", ErrorCodeName(e.code())},
         {"message", e.what()}});
    return kExitFailure;
  } catch (const std::exception &e) {
    Log(LogLevel::kError, "command_failed",
        {{"command", command}, {"code", "internal"}, {"message", e.what()}});
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace labeler
