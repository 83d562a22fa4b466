// Copyright 2026 The docret Authors.
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

#include <gtest/gtest.h>
#include <httplib.h>
#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>

#include <chrono>
#include <csignal>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <thread>

#include "docret/eval/dataset.hpp"
#include "docret/eval/io.hpp"
#include "docret/merge/checkpoint.hpp"
#include "docret/mining/io.hpp"
#include "support.hpp"

extern char** environ;

namespace docret {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const fs::path kCli = DOCRET_CLI_PATH;
const fs::path kMini = fs::path(DOCRET_TEST_DATA) / "mini";

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (const char c : s) {
    if (c == '\'') {
      q += "'\\''";
    } else {
      q += c;
    }
  }
  return q + "'";
}

class CliTest : public ::testing::Test {
 protected:
  Result run(const std::vector<std::string>& args) {
    std::string cmd = quote(kCli.string());
    for (const auto& a : args) cmd += " " + quote(a);
    const auto out = dir_ / "stdout.txt";
    const auto err = dir_ / "stderr.txt";
    cmd += " > " + quote(out.string()) + " 2> " + quote(err.string());
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = testing::read_text(out);
    r.err = testing::read_text(err);
    return r;
  }

  fs::path path(const std::string& name) const { return dir_ / name; }

  // Index of the mini corpus under `out`.
  void index_mini(const fs::path& out, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{"index", "--provider", "synthetic", "--dim", "64",
                                  "--corpus", kMini.string(), "--output-dir", out.string()};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
  }

  testing::TempDir dir_{"docret-cli"};
};

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"index", "--no-such-flag"}).code, 1);
  EXPECT_EQ(run({"--threads", "0", "loss-check"}).code, 1);
  EXPECT_EQ(run({"index"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, IndexBuildsAndLogsCount) {
  const auto r = run({"index", "--provider", "synthetic", "--dim", "64", "--corpus",
                      kMini.string(), "--output-dir", path("out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("indexed 12 docs"), std::string::npos) << r.err;
  for (const auto* f : {"meta.json", "ids.txt", "vectors.bin", "provider.json"}) {
    EXPECT_TRUE(fs::exists(path("out") / "index" / f)) << f;
  }
}

TEST_F(CliTest, MissingCorpusExitsTwo) {
  const auto r = run({"index", "--corpus", path("nowhere").string(), "--output-dir",
                      path("out").string()});
  EXPECT_EQ(r.code, 2) << r.err;
}

TEST_F(CliTest, RebuildIsByteIdentical) {
  index_mini(path("a"), {"--ann"});
  index_mini(path("b"), {"--ann"});
  for (const auto* f : {"vectors.bin", "hnsw.bin", "meta.json", "ids.txt"}) {
    EXPECT_EQ(testing::read_text(path("a") / "index" / f),
              testing::read_text(path("b") / "index" / f))
        << f;
  }
}

TEST_F(CliTest, SearchFindsMatchingDoc) {
  index_mini(path("out"));
  const auto r = run({"search", "--output-dir", path("out").string(), "-k", "1", "-q",
                      "glaciers carve u shaped valleys and leave moraines"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1\td07\t"), std::string::npos) << r.out;
}

TEST_F(CliTest, EvalSelfQueriesScorePerfect) {
  // Every query is exactly its positive document's text.
  auto ds = eval::load_beir(kMini);
  ds.queries.clear();
  ds.qrels.clear();
  for (const auto& [id, doc] : ds.corpus) {
    ds.queries["q" + id] = doc.text;
    ds.qrels["q" + id][id] = 1;
  }
  eval::save_beir(ds, path("self"));
  index_mini(path("out"));
  const auto r = run({"eval", "--dataset", path("self").string(), "--output-dir",
                      path("out").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = eval::read_report_json(path("out") / "report.json");
  EXPECT_DOUBLE_EQ(report.at("ndcg@5").mean, 1.0);
  EXPECT_TRUE(fs::exists(path("out") / "report.txt"));
  EXPECT_TRUE(fs::exists(path("out") / "run.tsv"));
}

TEST_F(CliTest, EvalMetricSelectionAndShallowRunWarning) {
  index_mini(path("out"));
  const auto r = run({"eval", "--dataset", kMini.string(), "--output-dir",
                      path("out").string(), "--metrics", "ndcg@5,mrr@10", "--depth", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("mrr@10 requested but run depth is 5"), std::string::npos) << r.err;
  const auto report = eval::read_report_json(path("out") / "report.json");
  ASSERT_EQ(report.metrics.size(), 2u);
  EXPECT_EQ(report.metrics[0].spec.name(), "ndcg@5");
  EXPECT_EQ(report.metrics[1].spec.name(), "mrr@10");
  EXPECT_EQ(run({"eval", "--dataset", kMini.string(), "--output-dir", path("out").string(),
                 "--metrics", "bleu@4"})
                .code,
            1);
}

TEST_F(CliTest, EvalOfExistingRunAndCompare) {
  index_mini(path("out"));
  ASSERT_EQ(run({"eval", "--dataset", kMini.string(), "--output-dir", path("out").string()}).code, 0);
  auto run_tsv = eval::read_run(path("out") / "run.tsv");
  // Same docs, reversed ranking.
  for (auto& [q, list] : run_tsv) {
    std::reverse(list.begin(), list.end());
    for (std::size_t i = 0; i < list.size(); ++i) list[i].score = double(list.size() - i);
  }
  eval::write_run(path("worse.tsv"), run_tsv);
  const auto r = run({"eval", "--dataset", kMini.string(), "--run", path("worse.tsv").string(),
                      "--report", path("worse.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto c = run({"compare", (path("out") / "report.json").string(),
                      path("worse.json").string(), "--out", path("cmp.txt").string()});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("ndcg@5"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("cmp.txt")));
}

TEST_F(CliTest, MineWritesNegativesDeterministically) {
  index_mini(path("out"));
  for (const auto* name : {"n1.tsv", "n2.tsv"}) {
    const auto r = run({"mine", "--dataset", kMini.string(), "--index-dir",
                        (path("out") / "index").string(), "--rrf-k", "60", "--pool", "10",
                        "--k", "3", "--out", path(name).string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(testing::read_text(path("n1.tsv")), testing::read_text(path("n2.tsv")));
  const auto rows = mining::read_negatives(path("n1.tsv"));
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.negatives.size(), 3u);
    for (const auto& n : row.negatives) EXPECT_NE(n, row.positive);
  }
  EXPECT_EQ(run({"mine", "--dataset", kMini.string(), "--pool", "2", "--k", "3"}).code, 1);
}

TEST_F(CliTest, MergeKeepsSchema) {
  merge::CheckpointTensors a{{"w", {{2, 2}, {1, 0, 0, 1}}}, {"b", {{2}, {0.5f, -0.5f}}}};
  merge::CheckpointTensors b{{"w", {{2, 2}, {0, 1, 1, 0}}}, {"b", {{2}, {1, 1}}}};
  merge::save_checkpoint(a, path("a.ckpt"));
  merge::save_checkpoint(b, path("b.ckpt"));
  const auto r = run({"merge", "--method", "slerp", "--alpha", "0.5", path("a.ckpt").string(),
                      path("b.ckpt").string(), "--out", path("m.ckpt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = merge::load_checkpoint(path("m.ckpt"));
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.at("w").shape, a.at("w").shape);
  EXPECT_EQ(m.at("b").shape, a.at("b").shape);

  merge::CheckpointTensors c{{"w", {{4}, {1, 0, 0, 1}}}, {"b", {{2}, {1, 1}}}};
  merge::save_checkpoint(c, path("c.ckpt"));
  EXPECT_EQ(run({"merge", path("a.ckpt").string(), path("c.ckpt").string()}).code, 2);
  EXPECT_EQ(run({"merge", "--alpha", "1.5", path("a.ckpt").string(), path("b.ckpt").string()}).code,
            1);
}

TEST_F(CliTest, AnalyzePcaIsDeterministic) {
  std::mt19937_64 rng(3);
  std::ofstream emb(path("ckpt1.tsv"));
  std::ofstream labels(path("labels.tsv"));
  for (int i = 0; i < 30; ++i) {
    const auto v = testing::gaussian(rng, 8);
    emb << "p" << i << "\tdense\t";
    for (std::size_t k = 0; k < v.size(); ++k) emb << (k ? "," : "") << v[k];
    emb << "\n";
    labels << "p" << i << "\t" << (i % 2 ? "hi" : "en") << "\t" << (i % 3 ? "document" : "query")
           << "\n";
  }
  emb.close();
  labels.close();
  for (const auto* out : {"o1", "o2"}) {
    const auto r = run({"analyze", "pca", "--embeddings", path("ckpt1.tsv").string(), "--labels",
                        path("labels.tsv").string(), "--output-dir", path(out).string()});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  const auto csv = testing::read_text(path("o1") / "pca_ckpt1.csv");
  EXPECT_EQ(csv, testing::read_text(path("o2") / "pca_ckpt1.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x,y,language,role,checkpoint");
  EXPECT_EQ(testing::read_text(path("o1") / "variance.json"),
            testing::read_text(path("o2") / "variance.json"));
}

TEST_F(CliTest, AnalyzeHeatmapOnMultivectorIndex) {
  std::ofstream emb(path("mv.tsv"));
  emb << "doc\tmv\t1,0,0;0,1,0;0,0,1;1,1,0\n";
  emb << "query\tmv\t0,1,0;1,1,0\n";
  emb.close();
  ASSERT_EQ(run({"index", "--provider", "precomputed", "--embeddings", path("mv.tsv").string(),
                 "--index-dir", path("idx").string()})
                .code,
            0);
  const auto r = run({"analyze", "heatmap", "--index-dir", path("idx").string(), "-q", "query",
                      "--doc", "doc", "--out-dir", path("heat").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = json::parse(testing::read_text(path("heat") / "summary.json"));
  EXPECT_NEAR(summary["maxsim"].get<double>(), 2.0, 1e-6);
  EXPECT_TRUE(fs::exists(path("heat") / "token_0.csv"));
  EXPECT_EQ(run({"analyze", "heatmap", "--index-dir", path("idx").string(), "-q", "query",
                 "--doc", "doc", "--grid", "3x3"})
                .code,
            2);
}

TEST_F(CliTest, AnalyzeStorageReport) {
  const auto r = run({"analyze", "storage", "--out", path("s.txt").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto* s : {"3,072", "6,144", "10,240"}) {
    EXPECT_NE(r.out.find(s), std::string::npos) << s;
  }
}

TEST_F(CliTest, LossCheckPasses) {
  const auto r = run({"loss-check", "--trials", "20"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("max relative error"), std::string::npos);
  // A tolerance nothing can meet makes the command fail.
  EXPECT_NE(run({"loss-check", "--trials", "2", "--tolerance", "0"}).code, 0);
}

class Server {
 public:
  Server(const std::vector<std::string>& args, const fs::path& log) {
    std::vector<std::string> full{kCli.string()};
    full.insert(full.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : full) argv.push_back(a.data());
    argv.push_back(nullptr);
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, 1, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_adddup2(&actions, 1, 2);
    if (posix_spawn(&pid_, argv[0], &actions, nullptr, argv.data(), environ) != 0) pid_ = -1;
    posix_spawn_file_actions_destroy(&actions);
    for (int i = 0; i < 200 && pid_ > 0 && port_ == 0; ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(25));
      const auto text = testing::read_text(log);
      const auto at = text.find("listening on ");
      if (at != std::string::npos) {
        const auto colon = text.find(':', at + 13);
        port_ = std::stoi(text.substr(colon + 1));
      }
    }
  }
  ~Server() { stop(); }

  int stop() {
    if (pid_ <= 0) return -1;
    kill(pid_, SIGTERM);
    int status = 0;
    waitpid(pid_, &status, 0);
    pid_ = -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  int port() const { return port_; }

 private:
  pid_t pid_ = -1;
  int port_ = 0;
};

TEST_F(CliTest, ServeAnswersSearches) {
  const auto corpus = path("one");
  fs::create_directories(corpus);
  std::ofstream(corpus / "corpus.jsonl") << R"({"_id":"only","title":"t","text":"a single page about owls"})"
                                          << "\n";
  ASSERT_EQ(run({"index", "--corpus", corpus.string(), "--index-dir", path("idx").string()}).code, 0);
  Server server({"serve", "--index-dir", path("idx").string(), "--port", "0", "--threads", "2"},
                path("serve.log"));
  ASSERT_GT(server.port(), 0) << testing::read_text(path("serve.log"));
  httplib::Client client("127.0.0.1", server.port());
  httplib::Result health;
  for (int i = 0; i < 100; ++i) {
    health = client.Get("/healthz");
    if (health && health->status == 200) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(health->body, "ok");

  const auto hit = client.Post("/search", R"({"query":"owls","k":1,"mode":"exact"})",
                               "application/json");
  ASSERT_TRUE(hit);
  ASSERT_EQ(hit->status, 200) << hit->body;
  const auto body = json::parse(hit->body);
  ASSERT_EQ(body["results"].size(), 1u);
  EXPECT_EQ(body["results"][0]["id"], "only");
  EXPECT_EQ(body["results"][0]["rank"], 1);

  for (const auto* bad : {"not json", R"({"k":1})", R"({"query":"owls","k":0})",
                          R"({"query":"owls","mode":"fuzzy"})"}) {
    const auto r = client.Post("/search", bad, "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 400) << bad;
    EXPECT_TRUE(json::parse(r->body).contains("error"));
  }
  EXPECT_EQ(server.stop(), 0);
}

}  // namespace
}  // namespace docret
