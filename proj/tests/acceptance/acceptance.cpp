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

// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Reference values come from tests/oracles.

#include <fmt/format.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "docret/analysis/storage.hpp"
#include "docret/core/vector_math.hpp"
#include "docret/eval/metrics.hpp"
#include "docret/eval/retrieval.hpp"
#include "docret/losses/gradient_check.hpp"
#include "docret/losses/losses.hpp"
#include "docret/merge/merge.hpp"
#include "docret/mining/fusion.hpp"
#include "docret/mining/negatives.hpp"
#include "docret/providers/precomputed.hpp"
#include "docret/providers/provider.hpp"
#include "docret/scoring/dense_index.hpp"
#include "docret/scoring/multivector_index.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace docret {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& check,
            double budget_s = 0.0) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0.0 && secs >= budget_s) {
    o.pass = false;
    o.detail += fmt::format("; over the {:.0f} s budget", budget_s);
  }
  if (!o.pass) ++failures;
  std::printf("%s  %-26s %s  (%.2f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(),
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

// ---------------------------------------------------------------- metrics

Outcome metric_oracle() {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> grade(0, 2);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  double worst = 0.0;
  std::size_t compared = 0;
  for (int inst = 0; inst < 500; ++inst) {
    const std::size_t n_docs = 1 + rng() % 20;
    const std::size_t n_queries = 1 + rng() % 10;
    eval::QrelSet qrels;
    eval::RetrievalRun run;
    for (std::size_t q = 0; q < n_queries; ++q) {
      const auto qid = "q" + std::to_string(q);
      for (std::size_t d = 0; d < n_docs; ++d) {
        if (rng() % 3 == 0) qrels[qid]["d" + std::to_string(d)] = grade(rng);
      }
      if (rng() % 8 == 0) continue;  // query missing from the run
      RankedList list;
      for (std::size_t d = 0; d < n_docs; ++d) {
        if (rng() % 4 == 0) continue;
        // Coarse scores so ties occur and the canonical tie-break matters.
        list.push_back({"d" + std::to_string(d), std::round(score(rng) * 8.0) / 8.0});
      }
      std::shuffle(list.begin(), list.end(), rng);
      run[qid] = list;
    }
    bool any_positive = false;
    for (const auto& [q, docs] : qrels) {
      for (const auto& [d, g] : docs) any_positive |= g > 0;
    }
    if (!any_positive) continue;
    for (const std::size_t k : {5, 10}) {
      const auto ref = oracle::oracle_metrics(run, qrels, k);
      const auto check = [&](const eval::MetricResult& m, auto field) {
        worst = std::max(worst, std::abs(m.mean - ref.mean.*field));
        if (m.per_query.size() != ref.per_query.size()) worst = INFINITY;
        for (const auto& [q, v] : m.per_query) {
          const auto it = ref.per_query.find(q);
          worst = it == ref.per_query.end() ? INFINITY
                                            : std::max(worst, std::abs(v - it->second.*field));
        }
        ++compared;
      };
      check(eval::ndcg_at_k(run, qrels, k), &oracle::MetricValues::ndcg);
      check(eval::recall_at_k(run, qrels, k), &oracle::MetricValues::recall);
      if (k == 10) {
        check(eval::map_at_k(run, qrels, k), &oracle::MetricValues::map);
        check(eval::mrr_at_k(run, qrels, k), &oracle::MetricValues::mrr);
      }
    }
  }
  return {worst <= 1e-9,
          fmt::format("{} metric results, max |prod - oracle| = {:.2e} (tol 1e-9)", compared, worst)};
}

// ----------------------------------------------------------------- maxsim

Outcome maxsim_equivalence() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto q = testing::random_multivector(rng, 1 + rng() % 16, 32);
    const auto d = testing::random_multivector(rng, 1 + rng() % 64, 32);
    const auto index = scoring::MultiVectorIndex::build({{"d", d}});
    const auto hit = index.search(q, 1, false);
    worst = std::max(worst, std::abs(hit.at(0).score - oracle::oracle_maxsim(q, d)));
  }
  std::vector<scoring::MultiVectorRecord> corpus;
  std::vector<std::pair<double, DocId>> expected;
  const auto q = testing::random_multivector(rng, 8, 32);
  for (int i = 0; i < 50; ++i) {
    const auto id = fmt::format("doc{:02}", i);
    auto d = testing::random_multivector(rng, 4 + rng() % 28, 32);
    expected.emplace_back(-oracle::oracle_maxsim(q, d), id);
    corpus.push_back({id, std::move(d)});
  }
  std::sort(expected.begin(), expected.end());
  const auto ranked = scoring::MultiVectorIndex::build(std::move(corpus)).search(q, 50, false);
  bool order = ranked.size() == 50;
  for (std::size_t i = 0; order && i < 50; ++i) order = ranked[i].doc == expected[i].second;
  return {worst <= 1e-6 && order,
          fmt::format("200 pairs max |diff| = {:.2e} (tol 1e-6); 50-doc ranking {}", worst,
                      order ? "matches" : "DIFFERS")};
}

// ----------------------------------------------------------------- losses

std::vector<double> flat(const losses::LossOutput& o) {
  std::vector<double> v;
  for (const auto& r : o.grad_queries) v.insert(v.end(), r.begin(), r.end());
  for (const auto& r : o.grad_positives) v.insert(v.end(), r.begin(), r.end());
  for (const auto& row : o.grad_negatives) {
    for (const auto& r : row) v.insert(v.end(), r.begin(), r.end());
  }
  return v;
}

std::vector<double> flat(const oracle::OracleGrad& g) {
  std::vector<double> v;
  for (const auto& r : g.queries) v.insert(v.end(), r.begin(), r.end());
  for (const auto& r : g.positives) v.insert(v.end(), r.begin(), r.end());
  for (const auto& row : g.negatives) {
    for (const auto& r : row) v.insert(v.end(), r.begin(), r.end());
  }
  return v;
}

// Per-entry |a - n| / max(|a|, |n|, floor), the floor being the larger of
// 1e-6 x the largest entry and 100 x the rounding resolution of a central
// difference at step 1e-5 on a loss of magnitude `loss`.
double rel_error(const std::vector<double>& a, const std::vector<double>& n, double loss) {
  constexpr double step = 1e-5;
  double scale = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), n.size()); ++i) {
    scale = std::max({scale, std::abs(a[i]), std::abs(n[i])});
  }
  const double resolution = std::numeric_limits<double>::epsilon() *
                            std::max(1.0, std::abs(loss)) / step;
  const double floor = std::max({1e-6 * scale, 100.0 * resolution, 1e-300});
  double worst = a.size() == n.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(a.size(), n.size()); ++i) {
    worst = std::max(worst, std::abs(a[i] - n[i]) / std::max({std::abs(a[i]), std::abs(n[i]), floor}));
  }
  return worst;
}

Outcome gradients() {
  constexpr double tau = 0.02;
  std::string detail;
  bool pass = true;
  // Production checker.
  for (const auto& r : losses::check_all_gradients(20, 42, tau)) {
    pass &= r.max_relative_error <= 1e-4;
    detail += fmt::format("{} {:.1e}, ", losses::loss_kind_name(r.kind), r.max_relative_error);
  }
  // Independent oracle differences of the oracle loss definitions.
  losses::LossConfig c;
  c.tau = tau;
  c.lambda = 0.3;
  c.matryoshka_dims = {4, 8, 16};
  std::mt19937_64 rng(2024);
  std::array<double, 4> worst{};
  for (int t = 0; t < 20; ++t) {
    const auto plain = testing::random_batch(rng, 2 + t % 4, 0, 16);
    const auto bi = losses::bi_encoder_loss(plain, c);
    worst[0] = std::max(worst[0], rel_error(flat(bi),
                                            flat(oracle::oracle_grad([&](const losses::LossBatch& b) {
                                              return oracle::oracle_info_nce(b, tau);
                                            }, plain)), bi.value));
    const auto neg = testing::random_batch(rng, 1 + t % 4, 1 + t % 2, 16);
    const auto hybrid = losses::bi_negative_ce_loss(neg, c);
    worst[1] = std::max(worst[1], rel_error(flat(hybrid),
                                            flat(oracle::oracle_grad([&](const losses::LossBatch& b) {
                                              return oracle::oracle_bi_negative_ce(b, tau, c.lambda);
                                            }, neg)), hybrid.value));
    const auto wrapped = losses::matryoshka_wrap(losses::bi_encoder_loss, plain, c);
    worst[2] = std::max(
        worst[2],
        rel_error(flat(wrapped),
                  flat(oracle::oracle_grad([&](const losses::LossBatch& b) {
                    return oracle::oracle_matryoshka(
                        [&](const losses::LossBatch& x) { return oracle::oracle_info_nce(x, tau); },
                        b, c.matryoshka_dims, c.matryoshka_weights);
                  }, plain)), wrapped.value));
    const auto late = testing::random_late_batch(rng, 2 + t % 3, 8);
    for (const bool normalized : {false, true}) {
      const auto a = losses::late_interaction_loss(late, c, normalized);
      const auto n = oracle::oracle_grad_late([&](const losses::LateInteractionBatch& b) {
        return oracle::oracle_late_interaction(b, tau, normalized);
      }, late);
      std::vector<double> av, nv;
      for (std::size_t i = 0; i < late.size(); ++i) {
        av.insert(av.end(), a.grad_queries[i].data.begin(), a.grad_queries[i].data.end());
        nv.insert(nv.end(), n.queries[i].begin(), n.queries[i].end());
      }
      for (std::size_t i = 0; i < late.size(); ++i) {
        av.insert(av.end(), a.grad_docs[i].data.begin(), a.grad_docs[i].data.end());
        nv.insert(nv.end(), n.docs[i].begin(), n.docs[i].end());
      }
      worst[3] = std::max(worst[3], rel_error(av, nv, a.value));
    }
  }
  for (const double w : worst) pass &= w <= 1e-4;
  detail += fmt::format("oracle FD {:.1e}/{:.1e}/{:.1e}/{:.1e} (tol 1e-4, tau 0.02)", worst[0],
                        worst[1], worst[2], worst[3]);
  return {pass, detail};
}

Outcome closed_forms() {
  losses::LossConfig c;
  double worst = 0.0;
  std::mt19937_64 rng(5);
  for (const std::size_t b : {2, 4, 8}) {
    // Every query equals every positive: all logits tie.
    const auto v = testing::unit_gaussian(rng, 16);
    losses::LossBatch batch;
    batch.queries.assign(b, v);
    batch.positives.assign(b, v);
    worst = std::max(worst, std::abs(losses::bi_encoder_loss(batch, c).value - std::log(double(b))));
  }
  for (int t = 0; t < 20; ++t) {
    const auto batch = testing::random_batch(rng, 2 + t % 6, 1 + t % 3, 12);
    c.lambda = 1.0;
    worst = std::max(worst, std::abs(losses::bi_negative_ce_loss(batch, c).value -
                                     losses::bi_encoder_loss(batch, c).value));
    c.lambda = 0.0;
    double pairwise = 0.0;
    std::size_t terms = 0;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      const double pos = oracle::oracle_cosine(batch.queries[i], batch.positives[i]);
      for (const auto& n : batch.negatives[i]) {
        const double x = (oracle::oracle_cosine(batch.queries[i], n) - pos) / c.tau;
        pairwise += std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
        ++terms;
      }
    }
    worst = std::max(worst, std::abs(losses::bi_negative_ce_loss(batch, c).value - pairwise / terms));
  }
  return {worst <= 1e-9,
          fmt::format("ln B for B in {{2,4,8}} and lambda endpoints, max |diff| = {:.2e} (tol 1e-9)", worst)};
}

Outcome matryoshka() {
  const std::vector<std::size_t> dims{768, 1536, 2560};
  std::mt19937_64 rng(9);
  double norm_err = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto v = testing::random_unit(rng, 2560);
    for (const auto d : dims) {
      const auto p = truncate_and_normalize(v, d);
      norm_err = std::max(norm_err, std::abs(p.norm() - 1.0));
    }
  }
  losses::LossConfig c;
  double wrap_err = 0.0;
  for (int t = 0; t < 5; ++t) {
    const auto batch = testing::random_batch(rng, 4, 0, 2560);
    const double wrapped = losses::matryoshka_wrap(losses::bi_encoder_loss, batch, c).value;
    double mean = 0.0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      losses::LossBatch cut;
      for (const auto& q : batch.queries) cut.queries.emplace_back(q.begin(), q.begin() + dims[i]);
      for (const auto& p : batch.positives) cut.positives.emplace_back(p.begin(), p.begin() + dims[i]);
      mean += c.matryoshka_weights[i] * losses::bi_encoder_loss(cut, c).value;
    }
    wrap_err = std::max(wrap_err, std::abs(wrapped - mean));
  }
  const auto text = analysis::format_storage_report(analysis::matryoshka_storage(dims, 1));
  bool printed = true;
  for (const auto* s : {"3,072", "6,144", "10,240"}) printed &= text.find(s) != std::string::npos;
  return {norm_err <= 1e-6 && wrap_err <= 1e-9 && printed,
          fmt::format("prefix |norm-1| <= {:.1e}; wrapper vs weighted mean {:.1e} (tol 1e-9); "
                      "storage 3,072 / 6,144 / 10,240 {}",
                      norm_err, wrap_err, printed ? "printed" : "MISSING")};
}

// ------------------------------------------------------------------- hnsw

Outcome hnsw_quality() {
  std::mt19937_64 rng(42);
  std::vector<scoring::DenseRecord> records;
  for (int i = 0; i < 10000; ++i) {
    records.push_back({fmt::format("v{:05}", i), testing::random_unit(rng, 128)});
  }
  const auto index = scoring::DenseIndex::build(std::move(records), scoring::HnswParams{});
  double recall = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto q = testing::random_unit(rng, 128);
    const auto exact = index.search(q, 10, scoring::SearchMode::kExact);
    const auto ann = index.search(q, 10, scoring::SearchMode::kAnn);
    std::set<DocId> truth;
    for (const auto& s : exact) truth.insert(s.doc);
    std::size_t hit = 0;
    for (const auto& s : ann) hit += truth.count(s.doc);
    recall += hit / 10.0;
  }
  recall /= 100.0;
  return {recall >= 0.95, fmt::format("recall@10 = {:.4f} over 100 queries (min 0.95)", recall)};
}

// ------------------------------------------------------------------ mining

Outcome rrf_and_mining() {
  const auto fused = mining::rrf_fuse({{{"a", 0.9}, {"b", 0.5}}, {{"a", 3.0}, {"c", 1.0}}}, 60.0);
  const double err = std::abs(fused.at(0).score - 2.0 / 61.0);
  bool ok = fused.at(0).doc == "a" && err <= 1e-12;

  mining::MiningConfig config;  // k = 3, pool 20, rrf_k 60
  std::mt19937_64 rng(config.seed);
  std::size_t violations = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<RankedList> lists(3);
    for (auto& l : lists) {
      for (int d = 0; d < 40; ++d) {
        if (rng() % 3) l.push_back({fmt::format("d{:02}", d), double(rng() % 1000)});
      }
      sort_ranked(l);
    }
    const auto f = mining::rrf_fuse(lists, config.rrf_k);
    const DocId positive = f.at(rng() % std::min<std::size_t>(f.size(), 25)).doc;
    std::vector<DocId> pool;
    for (const auto& s : f) {
      if (s.doc != positive && pool.size() < config.pool_size) pool.push_back(s.doc);
    }
    const auto neg = mining::mine_negatives(positive, f, config, rng);
    const std::set<DocId> distinct(neg.begin(), neg.end());
    bool bad = neg.size() != 3 || distinct.size() != 3 || distinct.contains(positive);
    for (const auto& n : neg) bad |= std::find(pool.begin(), pool.end(), n) == pool.end();
    violations += bad;
  }
  ok &= violations == 0;
  return {ok, fmt::format("rank-1-in-both = {:.15f} (|err| {:.1e}); 1000 trials, {} violations",
                          fused.at(0).score, err, violations)};
}

// ------------------------------------------------------------------- merge

Outcome merge_algebra() {
  std::mt19937_64 rng(11);
  std::normal_distribution<float> n(0.0f, 1.0f);
  const auto ckpt = [&] {
    merge::CheckpointTensors c;
    for (const auto* name : {"a", "b", "c"}) {
      merge::Tensor t{{5, 7}, {}};
      for (int i = 0; i < 35; ++i) t.data.push_back(n(rng));
      c[name] = t;
    }
    return c;
  };
  bool endpoints = true;
  double norm_err = 0.0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const auto a = ckpt();
    const auto b = ckpt();
    endpoints &= merge::merge_linear(a, b, 1.0) == a && merge::merge_linear(a, b, 0.0) == b;
    const double alpha = u(rng);
    const auto m = merge::merge_slerp(a, b, alpha);
    for (const auto& [name, ta] : a) {
      const auto norm = [](const std::vector<float>& v) {
        double s = 0.0;
        for (const float x : v) s += double(x) * x;
        return std::sqrt(s);
      };
      const double want = (1.0 - alpha) * norm(ta.data) + alpha * norm(b.at(name).data);
      norm_err = std::max(norm_err, std::abs(norm(m.at(name).data) / want - 1.0));
    }
  }
  const merge::CheckpointTensors ea{{"w", {{2}, {1, 0}}}};
  const merge::CheckpointTensors eb{{"w", {{2}, {0, 1}}}};
  const auto mid = merge::merge_slerp(ea, eb, 0.5).at("w").data;
  const double mid_err = std::max(std::abs(mid[0] - std::sqrt(0.5)), std::abs(mid[1] - std::sqrt(0.5)));
  return {endpoints && norm_err <= 1e-5 && mid_err <= 1e-6,
          fmt::format("linear endpoints {}; slerp norm rel err {:.1e} (tol 1e-5); "
                      "orthogonal midpoint err {:.1e} (tol 1e-6)",
                      endpoints ? "exact" : "INEXACT", norm_err, mid_err)};
}

// --------------------------------------------------------------------- e2e

Outcome end_to_end() {
  const auto ds = testing::toy_dataset(200, 40, 42);
  std::size_t fixture_bad = 0;
  for (const auto& [q, text] : ds.queries) {
    const auto& pos = ds.qrels.at(q).begin()->first;
    for (const auto& [d, doc] : ds.corpus) {
      const bool shares = testing::trigram_overlap(text, doc.text) >= 0.6;
      fixture_bad += shares != (d == pos);
    }
  }
  providers::SyntheticProvider provider({42, 64});
  std::vector<scoring::DenseRecord> records;
  for (const auto& [id, doc] : ds.corpus) records.push_back({id, provider.embed_text(doc.text)});
  const auto index = scoring::DenseIndex::build(std::move(records));
  eval::RetrievalOptions options;
  options.mode = scoring::SearchMode::kExact;
  const auto run = eval::run_retrieval(ds, provider, index, options);
  const double ndcg = eval::ndcg_at_k(run, ds.qrels, 5).mean;
  return {fixture_bad == 0 && ndcg >= 0.9,
          fmt::format("200 docs / 40 queries, fixture {}; NDCG@5 = {:.4f} (min 0.9)",
                      fixture_bad == 0 ? "verified (>= 60% 3-grams with exactly the positive)"
                                       : fmt::format("has {} bad pairs", fixture_bad),
                      ndcg)};
}

Outcome relative_improvement() {
  const auto report = [](double mean) {
    eval::MetricResult r{eval::MetricSpec::parse("ndcg@5"), {{"q", mean}}, mean};
    return eval::MetricReport{{r}};
  };
  const auto rows = eval::compare_runs(report(0.716), report(0.284));
  const double pct = rows.at(0).relative.value() * 100.0;
  return {std::abs(pct - 152.0) <= 1.0, fmt::format("0.716 vs 0.284 -> {:.2f}% (152 +/- 1)", pct)};
}

// ------------------------------------------------------------- determinism

std::string read_all(const fs::path& p) { return testing::read_text(p); }

#ifdef DOCRET_CLI_PATH
int cli(const std::vector<std::string>& args, const fs::path& log) {
  std::string cmd = std::string("'") + DOCRET_CLI_PATH + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

Outcome determinism() {
#ifdef DOCRET_CLI_PATH
  testing::TempDir dir("docret-accept");
  const auto ds = testing::toy_dataset(200, 40, 42);
  eval::save_beir(ds, dir / "toy");
  // Embedding file and labels for the projection step.
  providers::SyntheticProvider provider({42, 32});
  providers::EmbeddingTable table;
  std::ofstream labels(dir / "labels.tsv");
  std::size_t i = 0;
  for (const auto& [id, doc] : ds.corpus) {
    table.emplace(id, providers::EmbeddingRecord{id, provider.embed_text(doc.text)});
    labels << id << "\t" << (i++ % 2 ? "hi" : "en") << "\tdocument\n";
  }
  labels.close();
  providers::save_precomputed(dir / "emb.tsv", table);

  std::vector<std::string> files;
  for (const auto* out : {"run1", "run2"}) {
    const auto o = (dir / out).string();
    const auto log = dir / (std::string(out) + ".log");
    const std::vector<std::vector<std::string>> steps{
        {"--seed", "42", "--output-dir", o, "index", "--corpus", (dir / "toy").string(), "--ann"},
        {"--seed", "42", "--output-dir", o, "mine", "--dataset", (dir / "toy").string(),
         "--index-dir", o + "/index"},
        {"--seed", "42", "--output-dir", o, "eval", "--dataset", (dir / "toy").string()},
        {"--seed", "42", "--output-dir", o, "analyze", "pca", "--embeddings",
         (dir / "emb.tsv").string(), "--labels", (dir / "labels.tsv").string()},
    };
    for (const auto& s : steps) {
      if (const int code = cli(s, log); code != 0) {
        return {false, fmt::format("{} exited {}: {}", s[4], code, read_all(log))};
      }
    }
  }
  std::size_t compared = 0;
  std::vector<std::string> differ;
  for (const auto& entry : fs::recursive_directory_iterator(dir / "run1")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), dir / "run1");
    ++compared;
    if (read_all(entry.path()) != read_all(dir / "run2" / rel)) differ.push_back(rel.string());
  }
  std::string list;
  for (const auto& d : differ) list += " " + d;
  return {differ.empty() && compared >= 10,
          fmt::format("index/mine/eval/analyze pca twice via CLI: {} files compared, {}", compared,
                      differ.empty() ? "all byte-identical" : "differ:" + list)};
#else
  return {false, "CLI not built; configure with DOCRET_BUILD_TOOLS=ON"};
#endif
}

}  // namespace
}  // namespace docret

int main() {
  using namespace docret;
  report("metric-oracle", metric_oracle, 10.0);
  report("maxsim-equivalence", maxsim_equivalence, 10.0);
  report("gradient-correctness", gradients, 30.0);
  report("closed-form-losses", closed_forms);
  report("matryoshka-contract", matryoshka);
  report("hnsw-quality", hnsw_quality, 60.0);
  report("rrf-arithmetic", rrf_and_mining);
  report("merge-algebra", merge_algebra);
  report("end-to-end-toy", end_to_end);
  report("relative-improvement", relative_improvement);
  report("determinism", determinism);
  std::printf("%s: %d failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
