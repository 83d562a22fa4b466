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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docret/core/ranking.hpp"
#include "docret/eval/dataset.hpp"

namespace docret::eval {

using RetrievalRun = std::map<QueryId, RankedList>;

enum class MetricKind { kNdcg, kRecall, kMap, kMrr };

struct MetricSpec {
  MetricKind kind = MetricKind::kNdcg;
  std::size_t k = 10;

  /// "ndcg@5", "recall@10", "map@10", "mrr@10".
  std::string name() const;
  /// Inverse of name(); throws kInvalidArgument.
  static MetricSpec parse(std::string_view text);

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;
};

/// ndcg@5, ndcg@10, recall@5, recall@10, map@10, mrr@10.
std::vector<MetricSpec> default_metrics();
/// Comma-separated list of metric names.
std::vector<MetricSpec> parse_metric_list(std::string_view csv);

struct MetricResult {
  MetricSpec spec;
  std::map<QueryId, double> per_query;  // queries with >= 1 positive
  double mean = 0.0;
};

/// Per-query values over every query in `qrels` with a positive judgment;
/// a query absent from `run` scores 0. Each list is put in canonical order
/// before scoring. NDCG uses linear gain and a log2(rank + 1) discount;
/// recall and MAP divide by the query's total positives; MAP and MRR treat
/// grade > 0 as relevant. Throws kInvalidArgument (k == 0), kDuplicateId.
MetricResult compute_metric(const RetrievalRun& run, const QrelSet& qrels,
                            const MetricSpec& spec);

MetricResult ndcg_at_k(const RetrievalRun& run, const QrelSet& qrels,
                       std::size_t k);
MetricResult recall_at_k(const RetrievalRun& run, const QrelSet& qrels,
                         std::size_t k);
MetricResult map_at_k(const RetrievalRun& run, const QrelSet& qrels,
                      std::size_t k);
MetricResult mrr_at_k(const RetrievalRun& run, const QrelSet& qrels,
                      std::size_t k);

struct MetricReport {
  std::vector<MetricResult> metrics;

  /// Throws kInvalidArgument for an unknown name.
  const MetricResult& at(std::string_view name) const;
};

MetricReport evaluate(const RetrievalRun& run, const QrelSet& qrels,
                      const std::vector<MetricSpec>& specs);

/// Deepest list in the run.
std::size_t run_depth(const RetrievalRun& run);

struct MetricComparison {
  std::string name;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double delta = 0.0;               // a - b
  std::optional<double> relative;   // (a - b) / b; empty when b == 0
};

/// nullopt when b == 0.
std::optional<double> relative_improvement(double a, double b);

/// Metrics present in both reports, in report A's order. Throws
/// kQueryMismatch when the reports cover different metrics or queries.
std::vector<MetricComparison> compare_runs(const MetricReport& a,
                                           const MetricReport& b);

}  // namespace docret::eval
