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

#include "common.hpp"
#include "docret/core/parallel.hpp"
#include "docret/eval/dataset.hpp"
#include "docret/eval/retrieval.hpp"
#include "docret/providers/precomputed.hpp"
#include "docret/scoring/dense_index.hpp"
#include "docret/scoring/multivector_index.hpp"

namespace docret::cli {
namespace {

struct IndexOptions {
  std::filesystem::path corpus;
  std::filesystem::path index_dir;
  ProviderOptions provider;
  bool multivector = false;
  std::size_t doc_tokens = 256;
  std::size_t query_tokens = 32;
  bool ann = false;
  scoring::HnswParams hnsw;
};

std::filesystem::path corpus_file(const std::filesystem::path& p) {
  if (std::filesystem::is_directory(p)) return p / "corpus.jsonl";
  return p;
}

// Every record of a precomputed file, in id order.
int index_embedding_file(const IndexOptions& o,
                         const std::filesystem::path& dir) {
  const auto table = providers::load_precomputed(o.provider.embeddings);
  if (table.empty()) fail(ErrorCode::kParseError, "no records in " + o.provider.embeddings.string());
  const bool mv = table.begin()->second.kind() == providers::RecordKind::kMultiVector;
  std::optional<scoring::HnswParams> ann;
  if (o.ann) ann = o.hnsw;
  if (mv) {
    std::vector<scoring::MultiVectorRecord> records;
    for (const auto& [id, rec] : table) {
      records.push_back({id, std::get<MultiVectorEmbedding>(rec.payload)});
    }
    if (o.ann) spdlog::warn("--ann ignored: multivector indexes are exact");
    const auto index = scoring::MultiVectorIndex::build(std::move(records));
    index.save(dir);
  } else {
    std::vector<scoring::DenseRecord> records;
    for (const auto& [id, rec] : table) {
      records.push_back({id, std::get<DenseEmbedding>(rec.payload)});
    }
    const auto index = scoring::DenseIndex::build(std::move(records), ann);
    index.save(dir);
  }
  save_index_provider(dir, {providers::PrecomputedSpec{std::filesystem::absolute(o.provider.embeddings)},
                            mv, o.query_tokens});
  spdlog::info("indexed {} docs from {} into {}", table.size(),
               o.provider.embeddings.string(), dir.string());
  return kExitOk;
}

int run_index(const GlobalOptions& g, const IndexOptions& o) {
  if (o.corpus.empty() && o.provider.embeddings.empty()) {
    throw UsageError("index needs --corpus or --embeddings");
  }
  if (o.doc_tokens == 0 || o.query_tokens == 0) {
    throw UsageError("--doc-tokens and --query-tokens must be positive");
  }
  const auto dir = output_path(g, o.index_dir, "index");
  if (o.corpus.empty()) {
    if (o.provider.kind != "precomputed" && o.provider.kind != "synthetic") {
      throw UsageError("--embeddings without --corpus indexes the file itself");
    }
    ensure_dir(dir);
    return index_embedding_file(o, dir);
  }

  const auto kind = provider_kind(o.provider, g.seed);
  const auto path = corpus_file(o.corpus);
  if (!std::filesystem::exists(path)) {
    fail(ErrorCode::kIoError, "corpus not found: " + path.string());
  }
  const auto corpus = eval::load_corpus(path);
  if (corpus.empty()) fail(ErrorCode::kParseError, "empty corpus " + path.string());
  const auto provider = providers::make_provider(kind);

  std::vector<std::pair<DocId, const eval::CorpusDoc*>> docs;
  for (const auto& [id, doc] : corpus) docs.emplace_back(id, &doc);
  std::optional<scoring::HnswParams> ann;
  if (o.ann) ann = o.hnsw;

  ensure_dir(dir);
  if (o.multivector) {
    std::vector<std::optional<MultiVectorEmbedding>> emb(docs.size());
    parallel_for(docs.size(), g.threads, [&](std::size_t i) {
      const auto input = eval::document_input(*provider, docs[i].first, *docs[i].second);
      emb[i] = provider->embed_text_multivector(input, o.doc_tokens);
    });
    std::vector<scoring::MultiVectorRecord> records;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      records.push_back({docs[i].first, std::move(*emb[i])});
    }
    if (o.ann) spdlog::warn("--ann ignored: multivector indexes are exact");
    scoring::MultiVectorIndex::build(std::move(records)).save(dir);
  } else {
    std::vector<std::optional<DenseEmbedding>> emb(docs.size());
    parallel_for(docs.size(), g.threads, [&](std::size_t i) {
      const auto input = eval::document_input(*provider, docs[i].first, *docs[i].second);
      emb[i] = provider->embed_text(input);
    });
    std::vector<scoring::DenseRecord> records;
    for (std::size_t i = 0; i < docs.size(); ++i) {
      records.push_back({docs[i].first, std::move(*emb[i])});
    }
    scoring::DenseIndex::build(std::move(records), ann).save(dir);
  }
  save_index_provider(dir, {kind, o.multivector, o.query_tokens});
  spdlog::info("indexed {} docs into {}", docs.size(), dir.string());
  return kExitOk;
}

}  // namespace

void register_index(CLI::App& app, const GlobalOptions& g, Action& action) {
  auto o = std::make_shared<IndexOptions>();
  auto* cmd = app.add_subcommand("index", "Embed a corpus and build a persisted index");
  cmd->add_option("--corpus", o->corpus, "BEIR dataset dir or corpus.jsonl");
  cmd->add_option("--index-dir", o->index_dir, "Output index dir (default <output-dir>/index)");
  add_provider_options(*cmd, o->provider);
  cmd->add_flag("--multivector", o->multivector, "Build a late-interaction index");
  cmd->add_option("--doc-tokens", o->doc_tokens, "Max tokens per document (multivector)")
      ->capture_default_str();
  cmd->add_option("--query-tokens", o->query_tokens, "Max tokens per query (multivector)")
      ->capture_default_str();
  cmd->add_flag("--ann", o->ann, "Also build an HNSW graph");
  cmd->add_option("--hnsw-m", o->hnsw.m, "HNSW links per node")->capture_default_str();
  cmd->add_option("--ef-construction", o->hnsw.ef_construction, "HNSW build beam")
      ->capture_default_str();
  cmd->add_option("--ef-search", o->hnsw.ef_search, "HNSW default query beam")
      ->capture_default_str();
  cmd->callback([&g, o, &action] {
    action = [&g, o] {
      o->hnsw.seed = g.seed;
      return run_index(g, *o);
    };
  });
}

}  // namespace docret::cli
