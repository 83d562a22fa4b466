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

#include <spdlog/spdlog.h>

#include <random>

#include "common.hpp"
#include "docret/core/parallel.hpp"
#include "docret/eval/dataset.hpp"
#include "docret/eval/io.hpp"
#include "docret/eval/retrieval.hpp"
#include "docret/mining/bm25.hpp"
#include "docret/mining/fusion.hpp"
#include "docret/mining/io.hpp"
#include "docret/mining/negatives.hpp"
#include "loaded_index.hpp"

namespace docret::cli {
namespace {

struct MineOptions {
  std::filesystem::path dataset;
  std::filesystem::path sidecars;
  std::filesystem::path index_dir;
  std::vector<std::filesystem::path> rankings;
  std::filesystem::path pages;
  std::filesystem::path out;
  std::string strategy = "fused";
  bool no_bm25 = false;
  std::size_t depth = 100;
  mining::MiningConfig config;
};

std::vector<mining::TextSidecar> corpus_sidecars(const eval::BenchmarkDataset& ds) {
  std::vector<mining::TextSidecar> out;
  for (const auto& [id, doc] : ds.corpus) {
    out.push_back({id, doc.text.empty() ? doc.title : doc.text});
  }
  return out;
}

// Positives of `q` in id order.
std::vector<DocId> positives_of(const eval::QrelSet& qrels, const QueryId& q) {
  std::vector<DocId> out;
  const auto it = qrels.find(q);
  if (it == qrels.end()) return out;
  for (const auto& [d, grade] : it->second) {
    if (grade > 0) out.push_back(d);
  }
  return out;
}

// One fused ranking per query with at least one positive.
std::map<QueryId, RankedList> fused_rankings(const GlobalOptions& g,
                                             const MineOptions& o,
                                             const eval::BenchmarkDataset& ds,
                                             const std::vector<QueryId>& queries) {
  std::optional<mining::Bm25Index> bm25;
  if (!o.no_bm25) {
    auto sidecars = o.sidecars.empty() ? corpus_sidecars(ds) : mining::read_sidecars(o.sidecars);
    bm25.emplace(std::move(sidecars));
  }
  std::optional<LoadedIndex> index;
  if (!o.index_dir.empty()) {
    index.emplace(LoadedIndex::open(o.index_dir));
    if (!index->dense()) {
      throw UsageError("mining needs a dense index for the embedding ranker");
    }
  }
  std::vector<eval::RetrievalRun> external;
  for (const auto& path : o.rankings) external.push_back(eval::read_run(path));
  if (!bm25 && !index && external.empty()) {
    throw UsageError("no rankers: drop --no-bm25, or add --index-dir or --ranking");
  }

  std::vector<RankedList> fused(queries.size());
  parallel_for(queries.size(), g.threads, [&](std::size_t i) {
    const auto& q = queries[i];
    const auto& text = ds.queries.at(q);
    std::vector<RankedList> lists;
    if (bm25) {
      auto list = bm25->rank(text, o.depth);
      // A zero BM25 score means no shared term; such docs are not retrieved.
      std::erase_if(list, [](const ScoredDoc& s) { return s.score <= 0.0; });
      lists.push_back(std::move(list));
    }
    if (index) {
      const auto& p = index->provider();
      lists.push_back(mining::embedding_rank(
          p.embed_text(eval::provider_input(p, q, text)), *index->dense(), o.depth));
    }
    for (const auto& run : external) {
      const auto it = run.find(q);
      if (it != run.end()) lists.push_back(top_k(it->second, o.depth));
    }
    fused[i] = mining::rrf_fuse(lists, o.config.rrf_k);
  });
  std::map<QueryId, RankedList> out;
  for (std::size_t i = 0; i < queries.size(); ++i) out.emplace(queries[i], std::move(fused[i]));
  return out;
}

int run_mine(const GlobalOptions& g, MineOptions o) {
  o.config.seed = g.seed;
  check_flags([&] { o.config.validate(); });
  if (o.depth < o.config.pool_size) throw UsageError("--depth must be at least --pool");
  if (o.strategy != "fused" && o.strategy != "page-neighbors") {
    throw UsageError("--strategy must be fused or page-neighbors");
  }
  if (o.strategy == "page-neighbors" && o.pages.empty()) {
    throw UsageError("--strategy page-neighbors needs --pages");
  }

  const auto ds = eval::load_beir(o.dataset);
  std::vector<QueryId> queries;
  for (const auto& [q, text] : ds.queries) {
    if (!positives_of(ds.qrels, q).empty()) queries.push_back(q);
  }

  std::mt19937_64 rng(g.seed);
  std::vector<mining::MinedNegatives> rows;
  std::size_t skipped = 0;
  if (o.strategy == "fused") {
    const auto fused = fused_rankings(g, o, ds, queries);
    for (const auto& q : queries) {
      const auto positives = positives_of(ds.qrels, q);
      for (const auto& pos : positives) {
        try {
          rows.push_back({q, pos, mining::mine_negatives(pos, fused.at(q), o.config, rng, positives)});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kPoolTooSmall) throw;
          spdlog::warn("query {} positive {}: {}", q, pos, e.what());
          ++skipped;
        }
      }
    }
  } else {
    const auto pages = mining::read_pages(o.pages);
    std::map<DocId, const mining::PageRef*> by_doc;
    for (const auto& p : pages) by_doc.emplace(p.doc, &p);
    for (const auto& q : queries) {
      for (const auto& pos : positives_of(ds.qrels, q)) {
        const auto it = by_doc.find(pos);
        if (it == by_doc.end()) {
          fail(ErrorCode::kDanglingReference, "positive " + pos + " missing from " + o.pages.string());
        }
        try {
          rows.push_back({q, pos, mining::page_neighbor_negatives(*it->second, pages, o.config, rng)});
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kNoNeighbors) throw;
          spdlog::warn("query {} positive {}: {}", q, pos, e.what());
          ++skipped;
        }
      }
    }
  }

  const auto path = output_path(g, o.out, "negatives.tsv");
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  mining::write_negatives(path, rows);
  spdlog::info("mined {} rows ({} skipped) into {}", rows.size(), skipped, path.string());
  return kExitOk;
}

}  // namespace

void register_mine(CLI::App& app, const GlobalOptions& g, Action& action) {
  auto o = std::make_shared<MineOptions>();
  auto* cmd = app.add_subcommand("mine", "Mine hard negatives per (query, positive)");
  cmd->add_option("--dataset", o->dataset, "BEIR dataset dir")->required();
  cmd->add_option("--sidecars", o->sidecars, "JSONL text per doc for BM25 (default corpus text)");
  cmd->add_option("--index-dir", o->index_dir, "Dense index used as an embedding ranker");
  cmd->add_option("--ranking", o->rankings, "External ranking TSV (repeatable)");
  cmd->add_flag("--no-bm25", o->no_bm25, "Leave BM25 out of the fusion");
  cmd->add_option("--strategy", o->strategy, "fused|page-neighbors")->capture_default_str();
  cmd->add_option("--pages", o->pages, "Page table TSV for page-neighbors");
  cmd->add_option("--depth", o->depth, "Per-ranker list depth")->capture_default_str();
  cmd->add_option("--rrf-k", o->config.rrf_k, "RRF constant")->capture_default_str();
  cmd->add_option("--pool", o->config.pool_size, "Fused candidates sampled from")
      ->capture_default_str();
  cmd->add_option("--k", o->config.k, "Negatives per positive")->capture_default_str();
  cmd->add_option("--out", o->out, "Negatives TSV (default <output-dir>/negatives.tsv)");
  cmd->callback([&g, o, &action] { action = [&g, o] { return run_mine(g, *o); }; });
}

}  // namespace docret::cli
