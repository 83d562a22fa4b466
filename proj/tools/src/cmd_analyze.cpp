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

#include <algorithm>
#include <iostream>
#include <sstream>

#include "common.hpp"
#include "docret/analysis/heatmap.hpp"
#include "docret/analysis/io.hpp"
#include "docret/analysis/pca.hpp"
#include "docret/analysis/storage.hpp"
#include "docret/core/parallel.hpp"
#include "docret/eval/retrieval.hpp"
#include "docret/providers/precomputed.hpp"
#include "loaded_index.hpp"

namespace docret::cli {
namespace {

struct PcaCommand {
  std::vector<std::filesystem::path> embeddings;
  std::vector<std::string> names;
  std::filesystem::path labels;
  std::filesystem::path out_dir;
};

analysis::Projection2D project_file(const std::filesystem::path& path,
                                    const std::map<std::string, analysis::PointLabel>& labels,
                                    std::uint64_t seed) {
  const auto table = providers::load_precomputed(path);
  std::vector<DenseEmbedding> rows;
  std::vector<analysis::PointLabel> row_labels;
  for (const auto& [id, rec] : table) {
    if (rec.kind() != providers::RecordKind::kDense) {
      fail(ErrorCode::kParseError, path.string() + ": pca needs dense records");
    }
    const auto it = labels.find(id);
    if (it == labels.end()) {
      fail(ErrorCode::kDanglingReference, path.string() + ": no label for '" + id + "'");
    }
    rows.push_back(std::get<DenseEmbedding>(rec.payload));
    row_labels.push_back(it->second);
  }
  analysis::PcaOptions options;
  options.seed = seed;
  return analysis::pca_project(rows, std::move(row_labels), options);
}

int run_pca(const GlobalOptions& g, const PcaCommand& o) {
  if (o.embeddings.empty()) throw UsageError("pca needs --embeddings");
  std::vector<std::string> names = o.names;
  if (names.empty()) {
    for (const auto& p : o.embeddings) names.push_back(p.stem().string());
  }
  if (names.size() != o.embeddings.size()) {
    throw UsageError("--name count must match --embeddings count");
  }
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size()) {
    throw UsageError("checkpoint names must be unique (use --name)");
  }
  const auto labels = analysis::read_labels(o.labels);
  std::vector<std::optional<analysis::Projection2D>> projections(names.size());
  parallel_for(names.size(), g.threads, [&](std::size_t i) {
    projections[i] = project_file(o.embeddings[i], labels, g.seed);
  });

  const auto dir = o.out_dir.empty() ? g.output_dir : o.out_dir;
  ensure_dir(dir);
  std::map<std::string, std::array<double, 2>> ratios;
  for (std::size_t i = 0; i < names.size(); ++i) {
    analysis::write_projection_csv(dir / ("pca_" + names[i] + ".csv"), *projections[i], names[i]);
    ratios[names[i]] = projections[i]->explained_variance_ratio;
    spdlog::info("{}: {} points, explained variance {:.4f} / {:.4f}", names[i],
                 projections[i]->points.size(), ratios[names[i]][0], ratios[names[i]][1]);
  }
  analysis::write_variance_json(dir / "variance.json", ratios);
  return kExitOk;
}

struct HeatmapCommand {
  std::filesystem::path index_dir;
  std::string query;
  std::string doc;
  std::string grid;
  std::filesystem::path out_dir;
};

analysis::GridShape parse_grid(const std::string& text) {
  const auto x = text.find('x');
  std::size_t rows = 0, cols = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used = 0;
    rows = std::stoul(text.substr(0, x), &used);
    if (used != x) throw std::invalid_argument(text);
    cols = std::stoul(text.substr(x + 1), &used);
    if (used != text.size() - x - 1) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw UsageError("--grid must look like 16x16, got '" + text + "'");
  }
  if (rows == 0 || cols == 0) throw UsageError("--grid dimensions must be positive");
  return {rows, cols};
}

int run_heatmap(const GlobalOptions& g, const HeatmapCommand& o) {
  std::optional<analysis::GridShape> shape;
  if (!o.grid.empty()) shape = parse_grid(o.grid);
  const auto index = LoadedIndex::open(output_path(g, o.index_dir, "index"));
  const auto* multi = index.multi();
  if (!multi) throw UsageError("heatmap needs a multivector index");
  const auto& ids = multi->ids();
  const auto it = std::find(ids.begin(), ids.end(), o.doc);
  if (it == ids.end()) fail(ErrorCode::kInvalidArgument, "doc '" + o.doc + "' not in index");
  const auto& doc = multi->doc(static_cast<std::size_t>(it - ids.begin()));
  const auto& p = index.provider();
  const auto q = p.embed_text_multivector(eval::provider_input(p, o.query, o.query),
                                          index.settings().query_tokens);
  const auto grids = analysis::maxsim_heatmap(
      q, doc, shape ? *shape : analysis::square_grid(doc.n_tokens()));
  const auto dir = output_path(g, o.out_dir, "heatmap");
  analysis::write_heatmaps(dir, grids);
  double total = 0.0;
  for (const auto& grid : grids) total += grid.token_max;
  spdlog::info("{} query tokens on a {}x{} grid, MaxSim {:.6f} -> {}", grids.size(),
               grids.front().shape.rows, grids.front().shape.cols, total, dir.string());
  return kExitOk;
}

struct StorageCommand {
  std::filesystem::path index_dir;
  std::vector<std::size_t> dims{768, 1536, 2560};
  std::size_t docs = 1;
  std::size_t mv_tokens = 0;
  std::size_t mv_dim = 128;
  std::filesystem::path out;
};

int run_storage(const GlobalOptions& g, const StorageCommand& o) {
  if (o.docs == 0) throw UsageError("--docs must be positive");
  std::vector<analysis::StorageEntry> entries;
  check_flags([&] {
    for (const auto d : o.dims) {
      if (d == 0) fail(ErrorCode::kInvalidArgument, "--dims entries must be positive");
    }
  });
  entries = analysis::matryoshka_storage(o.dims, o.docs);
  if (o.mv_tokens > 0) {
    entries.push_back(analysis::multivector_storage(
        "multivector-" + std::to_string(o.mv_tokens) + "x" + std::to_string(o.mv_dim),
        o.mv_tokens, o.mv_dim, o.docs));
  }
  if (!o.index_dir.empty()) {
    const auto index = LoadedIndex::open(o.index_dir);
    if (const auto* d = index.dense()) {
      entries.push_back(analysis::storage_of("index", *d));
    } else {
      entries.push_back(analysis::storage_of("index", *index.multi()));
    }
  }
  const auto report = analysis::format_storage_report(entries);
  std::cout << report;
  write_text_file(output_path(g, o.out, "storage.txt"), report);
  return kExitOk;
}

}  // namespace

void register_analyze(CLI::App& app, const GlobalOptions& g, Action& action) {
  auto* cmd = app.add_subcommand("analyze", "Projection, heatmap and storage exports");
  cmd->require_subcommand(1);

  auto pca = std::make_shared<PcaCommand>();
  auto* p = cmd->add_subcommand("pca", "2-D PCA per embedding file (one per checkpoint)");
  p->add_option("--embeddings", pca->embeddings, "Dense precomputed file (repeatable)")
      ->required();
  p->add_option("--name", pca->names, "Checkpoint name per file (default file stem)");
  p->add_option("--labels", pca->labels, "TSV id, language, role")->required();
  p->add_option("--out-dir", pca->out_dir, "Output dir (default <output-dir>)");
  p->callback([&g, pca, &action] { action = [&g, pca] { return run_pca(g, *pca); }; });

  auto heat = std::make_shared<HeatmapCommand>();
  auto* h = cmd->add_subcommand("heatmap", "Per-token MaxSim grids for one query and doc");
  h->add_option("--index-dir", heat->index_dir, "Multivector index (default <output-dir>/index)");
  h->add_option("-q,--query", heat->query, "Query text (record id for precomputed)")
      ->required();
  h->add_option("--doc", heat->doc, "Document id")->required();
  h->add_option("--grid", heat->grid, "ROWSxCOLS (default square)");
  h->add_option("--out-dir", heat->out_dir, "Output dir (default <output-dir>/heatmap)");
  h->callback([&g, heat, &action] { action = [&g, heat] { return run_heatmap(g, *heat); }; });

  auto store = std::make_shared<StorageCommand>();
  auto* s = cmd->add_subcommand("storage", "Bytes per document for each representation");
  s->add_option("--dims", store->dims, "Dense truncation dims")
      ->delimiter(',')
      ->capture_default_str();
  s->add_option("--docs", store->docs, "Corpus size for totals")->capture_default_str();
  s->add_option("--mv-tokens", store->mv_tokens, "Add a multivector entry with this many tokens");
  s->add_option("--mv-dim", store->mv_dim, "Token dim of that entry")->capture_default_str();
  s->add_option("--index-dir", store->index_dir, "Also report an existing index");
  s->add_option("--out", store->out, "Report file (default <output-dir>/storage.txt)");
  s->callback([&g, store, &action] { action = [&g, store] { return run_storage(g, *store); }; });
}

}  // namespace docret::cli
