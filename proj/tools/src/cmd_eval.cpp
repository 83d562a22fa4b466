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

#include <algorithm>
#include <iostream>

#include "common.hpp"
#include "docret/eval/dataset.hpp"
#include "docret/eval/io.hpp"
#include "docret/eval/metrics.hpp"
#include "docret/eval/retrieval.hpp"
#include "loaded_index.hpp"

namespace docret::cli {
namespace {

struct EvalOptions {
  std::filesystem::path dataset;
  std::filesystem::path index_dir;
  std::filesystem::path run_in;
  std::filesystem::path run_out;
  std::filesystem::path report;
  std::size_t depth = 100;
  std::string metrics;
  std::string mode = "exact";
  std::optional<std::size_t> ef_search;
  bool normalized = false;
};

int run_eval(const GlobalOptions& g, const EvalOptions& o) {
  if (o.depth == 0) throw UsageError("--depth must be positive");
  if (!o.run_in.empty() && !o.index_dir.empty()) {
    throw UsageError("--run and --index-dir are exclusive");
  }
  std::vector<eval::MetricSpec> specs = eval::default_metrics();
  eval::RetrievalOptions ropt;
  check_flags([&] {
    if (!o.metrics.empty()) specs = eval::parse_metric_list(o.metrics);
    ropt.mode = parse_search_mode(o.mode);
  });
  ropt.depth = o.depth;
  ropt.threads = g.threads;
  ropt.ef_search = o.ef_search;
  ropt.normalized_maxsim = o.normalized;

  const auto dataset = eval::load_beir(o.dataset);
  spdlog::info("dataset: {} docs, {} queries, {} judgments", dataset.corpus.size(),
               dataset.queries.size(), eval::judgment_count(dataset.qrels));

  eval::RetrievalRun run;
  if (!o.run_in.empty()) {
    run = eval::read_run(o.run_in);
  } else {
    const auto index = LoadedIndex::open(output_path(g, o.index_dir, "index"));
    ropt.max_query_tokens = index.settings().query_tokens;
    if (const auto* d = index.dense()) {
      run = eval::run_retrieval(dataset, index.provider(), *d, ropt);
    } else {
      run = eval::run_retrieval(dataset, index.provider(), *index.multi(), ropt);
    }
    const auto run_path = output_path(g, o.run_out, "run.tsv");
    if (run_path.has_parent_path()) ensure_dir(run_path.parent_path());
    eval::write_run(run_path, run);
    spdlog::info("wrote {}", run_path.string());
  }

  const auto depth = eval::run_depth(run);
  for (const auto& s : specs) {
    if (s.k > depth) {
      spdlog::warn("{} requested but run depth is {}; computed on available depth",
                   s.name(), depth);
    }
  }
  const auto report = eval::evaluate(run, dataset.qrels, specs);
  auto json_path = output_path(g, o.report, "report.json");
  auto text_path = json_path;
  text_path.replace_extension(".txt");
  if (json_path.has_parent_path()) ensure_dir(json_path.parent_path());
  eval::write_report_json(json_path, report);
  eval::write_report_text(text_path, report);
  for (const auto& m : report.metrics) {
    std::cout << fmt::format("{}\t{:.6f}\n", m.spec.name(), m.mean);
  }
  spdlog::info("wrote {} and {}", json_path.string(), text_path.string());
  return kExitOk;
}

struct CompareOptions {
  std::filesystem::path a;
  std::filesystem::path b;
  std::filesystem::path out;
};

int run_compare(const GlobalOptions& g, const CompareOptions& o) {
  const auto rows = eval::compare_runs(eval::read_report_json(o.a),
                                       eval::read_report_json(o.b));
  const auto path = output_path(g, o.out, "comparison.txt");
  if (path.has_parent_path()) ensure_dir(path.parent_path());
  eval::write_comparison_text(path, rows);
  for (const auto& r : rows) {
    const auto rel = r.relative ? fmt::format("{:+.2f}%", *r.relative * 100.0)
                                : std::string("undefined");
    std::cout << fmt::format("{}\t{:.6f}\t{:.6f}\t{:+.6f}\t{}\n", r.name, r.mean_a,
                             r.mean_b, r.delta, rel);
  }
  return kExitOk;
}

}  // namespace

void register_eval(CLI::App& app, const GlobalOptions& g, Action& action) {
  auto o = std::make_shared<EvalOptions>();
  auto* cmd = app.add_subcommand("eval", "Retrieve for every query and score the run");
  cmd->add_option("--dataset", o->dataset, "BEIR dataset dir")->required();
  cmd->add_option("--index-dir", o->index_dir, "Index dir (default <output-dir>/index)");
  cmd->add_option("--run", o->run_in, "Score an existing run TSV instead of retrieving");
  cmd->add_option("--run-out", o->run_out, "Run TSV (default <output-dir>/run.tsv)");
  cmd->add_option("--report", o->report,
                  "Report JSON; a .txt twin is written beside it "
                  "(default <output-dir>/report.json)");
  cmd->add_option("--depth", o->depth, "Results kept per query")->capture_default_str();
  cmd->add_option("--metrics", o->metrics,
                  "Comma list, e.g. ndcg@5,recall@10,map@10,mrr@10");
  cmd->add_option("--mode", o->mode, "exact|ann")->capture_default_str();
  cmd->add_option("--ef", o->ef_search, "HNSW query beam override");
  cmd->add_flag("--normalized", o->normalized, "Divide MaxSim by query tokens");
  cmd->callback([&g, o, &action] { action = [&g, o] { return run_eval(g, *o); }; });
}

void register_compare(CLI::App& app, const GlobalOptions& g, Action& action) {
  auto o = std::make_shared<CompareOptions>();
  auto* cmd = app.add_subcommand("compare", "Relative improvement of report A over B");
  cmd->add_option("a", o->a, "Report JSON of system A")->required();
  cmd->add_option("b", o->b, "Report JSON of system B")->required();
  cmd->add_option("--out", o->out, "Comparison table (default <output-dir>/comparison.txt)");
  cmd->callback([&g, o, &action] { action = [&g, o] { return run_compare(g, *o); }; });
}

}  // namespace docret::cli
