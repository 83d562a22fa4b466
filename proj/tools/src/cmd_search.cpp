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

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <iostream>

#include "common.hpp"
#include "loaded_index.hpp"

namespace docret::cli {
namespace {

struct SearchOptions {
  std::filesystem::path index_dir;
  std::string query;
  std::size_t k = 10;
  std::string mode = "exact";
  std::optional<std::size_t> ef_search;
  bool normalized = false;
};

int run_search(const GlobalOptions& g, const SearchOptions& o) {
  if (o.k == 0) throw UsageError("-k must be positive");
  const auto mode = [&] {
    scoring::SearchMode m{};
    check_flags([&] { m = parse_search_mode(o.mode); });
    return m;
  }();
  const auto index = LoadedIndex::open(output_path(g, o.index_dir, "index"));
  const auto hits = index.search(o.query, o.k, mode, o.ef_search, o.normalized);
  std::cout << "rank\tid\tscore\n";
  for (std::size_t i = 0; i < hits.size(); ++i) {
    std::cout << fmt::format("{}\t{}\t{}\n", i + 1, hits[i].doc, hits[i].score);
  }
  return kExitOk;
}

}  // namespace

void register_search(CLI::App& app, const GlobalOptions& g, Action& action) {
  auto o = std::make_shared<SearchOptions>();
  auto* cmd = app.add_subcommand("search", "Query an index; prints rank, id, score");
  cmd->add_option("--index-dir", o->index_dir, "Index dir (default <output-dir>/index)");
  cmd->add_option("-q,--query", o->query, "Query text (record id for precomputed)")
      ->required();
  cmd->add_option("-k", o->k, "Results to return")->capture_default_str();
  cmd->add_option("--mode", o->mode, "exact|ann")->capture_default_str();
  cmd->add_option("--ef", o->ef_search, "HNSW query beam override");
  cmd->add_flag("--normalized", o->normalized, "Divide MaxSim by query tokens");
  cmd->callback([&g, o, &action] { action = [&g, o] { return run_search(g, *o); }; });
}

}  // namespace docret::cli
