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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "labeler/evaluation.h"
#include "labeler/mock_server.h"
#include "test_util.h"

namespace labeler {
namespace {

namespace fs = std::filesystem;
using testing::FixturePath;
using testing::TempDir;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Cli(std::vector<std::string> args, const std::string &input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = RunCli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string P(const fs::path &p) { return p.string(); }

// Runs ingest, labelspace, metrics and assign into `dir`.
void RunPipeline(const fs::path &dir) {
  const std::string corpus = P(dir / "corpus.jsonl");
  ASSERT_EQ(Cli({"ingest", "--input", P(FixturePath("planted_corpus.jsonl")), "--out",
                 corpus}).code, 0);
  const CliRun space = Cli({"--providers", "mock", "labelspace", "--corpus", corpus,
                         "--k", "4", "--out", P(dir / "space.json"),
                         "--keywords-out", P(dir / "keywords.jsonl")});
  ASSERT_EQ(space.code, 0) << space.err;
  ASSERT_EQ(Cli({"metrics", "--space", P(dir / "space.json"), "--keywords",
                 P(dir / "keywords.jsonl"), "--out", P(dir / "metrics.json"),
                 "--emit-csv", P(dir / "metrics")}).code, 0);
  ASSERT_EQ(Cli({"assign", "--space", P(dir / "space.json"), "--keywords",
                 P(dir / "keywords.jsonl"), "--threshold", "1", "--out",
                 P(dir / "predictions.jsonl")}).code, 0);
}

TEST(Cli, HelpAndVersionExitZero) {
  const CliRun help = Cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("labelspace"), std::string::npos);
  const CliRun version = Cli({"--version"});
  EXPECT_EQ(version.code, kExitOk);
  EXPECT_NE(version.out.find("0.1.0"), std::string::npos);
  EXPECT_EQ(Cli({"assign", "--help"}).code, kExitOk);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(Cli({"--no-such-flag", "ingest"}).code, kExitUsage);
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"ingest", "--input", "x"}).code, kExitUsage);
  EXPECT_EQ(Cli({"--providers", "remote", "ingest", "--input", "x", "--out", "y"}).code,
            kExitUsage);
}

TEST(Cli, RuntimeErrorsExitOneWithStructuredLog) {
  TempDir dir;
  const CliRun r = Cli({"ingest", "--input", P(dir / "missing.jsonl"), "--out",
                     P(dir / "out.jsonl")});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("\"command_failed\""), std::string::npos);
  EXPECT_NE(r.err.find("not_found"), std::string::npos);
}

TEST(Cli, FullPipelineOnPlantedCorpus) {
  TempDir dir;
  RunPipeline(dir.path());

  const LabelSpace space = LabelSpace::Load(dir / "space.json");
  EXPECT_EQ(space.size(), 4u);
  EXPECT_EQ(space.provenance().at("providers").at("embedder"), "mock-hash-v1/768");

  const auto metrics = ReadJsonFile(dir / "metrics.json");
  EXPECT_TRUE(metrics.contains("R"));
  EXPECT_TRUE(metrics.contains("S_D"));
  EXPECT_EQ(metrics.at("per_document").size(), 60u);
  EXPECT_TRUE(fs::exists(dir / "metrics_R.csv.meta.json"));
  EXPECT_EQ(ReadTextFile(dir / "metrics_R.csv").substr(0, 4), "k,R\n");

  {
    AnnotationStore store(dir / "gold.jsonl");
    for (const auto &[id, label] : testing::PlantedGold(space)) {
      store.Append({space.Id(), id, label, "oracle", "2026-01-01T00:00:00Z"});
    }
  }
  const CliRun eval = Cli({"evaluate", "--predictions", P(dir / "predictions.jsonl"),
                        "--annotations", P(dir / "gold.jsonl"), "--out",
                        P(dir / "eval.json")});
  ASSERT_EQ(eval.code, 0) << eval.err;
  const auto report = ReadJsonFile(dir / "eval.json");
  EXPECT_EQ(report.at("threshold_percent"), 1.0);
  EXPECT_GE(report.at("f1").get<double>(), 0.9);

  const CliRun sweep = Cli({"sweep", "threshold", "--space", P(dir / "space.json"),
                         "--keywords", P(dir / "keywords.jsonl"), "--annotations",
                         P(dir / "gold.jsonl"), "--thresholds", "1,5,10", "--csv",
                         P(dir / "t.csv")});
  ASSERT_EQ(sweep.code, 0) << sweep.err;
  const std::string csv = ReadTextFile(dir / "t.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Cli, ArtifactsAreByteIdenticalAcrossRuns) {
  TempDir a, b;
  RunPipeline(a.path());
  RunPipeline(b.path());
  for (const char *name :
       {"corpus.jsonl", "corpus.jsonl.meta.json", "space.json", "keywords.jsonl",
        "keywords.jsonl.meta.json", "metrics.json", "metrics_R.csv", "metrics_S.csv",
        "predictions.jsonl", "predictions.jsonl.meta.json"}) {
    EXPECT_EQ(ReadTextFile(a / name), ReadTextFile(b / name)) << name;
  }
}

TEST(Cli, ConfigFileIsOverriddenByFlags) {
  TempDir dir;
  const std::string corpus = P(FixturePath("planted_corpus.jsonl"));
  std::ofstream(dir / "settings.toml") << "threads = 2\n[labelspace]\nk = 3\n";
  ASSERT_EQ(Cli({"--config", P(dir / "settings.toml"), "labelspace", "--corpus",
                 corpus, "--out", P(dir / "three.json")}).code, 0);
  EXPECT_EQ(LabelSpace::Load(dir / "three.json").size(), 3u);
  ASSERT_EQ(Cli({"--config", P(dir / "settings.toml"), "labelspace", "--corpus",
                 corpus, "--k", "2", "--out", P(dir / "two.json")}).code, 0);
  EXPECT_EQ(LabelSpace::Load(dir / "two.json").size(), 2u);
}

TEST(Cli, EnvironmentOverridesEndpointFlags) {
  MockProviderServer server;
  server.Bind("127.0.0.1", 0);
  server.Start();
  TempDir dir;
  ::setenv("AI_EMBED_URL", server.url().c_str(), 1);
  const CliRun r = Cli({"--embed-endpoint", "mock", "labelspace", "--corpus",
                     P(FixturePath("planted_corpus.jsonl")), "--k", "4", "--out",
                     P(dir / "space.json")});
  ::unsetenv("AI_EMBED_URL");
  ASSERT_EQ(r.code, 0) << r.err;
  const LabelSpace remote = LabelSpace::Load(dir / "space.json");
  EXPECT_EQ(remote.provenance().at("providers").at("embedder"),
            "http:" + server.url() + "/768");

  ASSERT_EQ(Cli({"labelspace", "--corpus", P(FixturePath("planted_corpus.jsonl")),
                 "--k", "4", "--out", P(dir / "local.json")}).code, 0);
  // The HTTP client renormalizes what it receives, so vectors can differ in
  // the last bit and clusters may come out in another order.
  auto remote_names = remote.Names();
  auto local_names = LabelSpace::Load(dir / "local.json").Names();
  std::sort(remote_names.begin(), remote_names.end());
  std::sort(local_names.begin(), local_names.end());
  EXPECT_EQ(remote_names, local_names);
}

TEST(Cli, SplitWritesBothSides) {
  TempDir dir;
  ASSERT_EQ(Cli({"split", "--corpus", P(FixturePath("planted_corpus.jsonl")),
                 "--fraction", "0.25", "--seed", "3", "--train-out",
                 P(dir / "train.jsonl"), "--test-out", P(dir / "test.jsonl")}).code, 0);
  const std::string test = ReadTextFile(dir / "test.jsonl");
  const std::string train = ReadTextFile(dir / "train.jsonl");
  EXPECT_EQ(std::count(test.begin(), test.end(), '\n'), 15);
  EXPECT_EQ(std::count(train.begin(), train.end(), '\n'), 45);
}

TEST(Cli, AnnotateReadsFromInput) {
  TempDir dir;
  RunPipeline(dir.path());
  const CliRun r = Cli({"annotate", "--corpus", P(dir / "corpus.jsonl"), "--space",
                     P(dir / "space.json"), "--store", P(dir / "gold.jsonl")},
                    "1\ns\nq\n");
  ASSERT_EQ(r.code, 0) << r.err;
  AnnotationStore store(dir / "gold.jsonl");
  EXPECT_EQ(store.records().size(), 2u);
  EXPECT_TRUE(store.records()[1].unlabeled());
}

}  // namespace
}  // namespace labeler
