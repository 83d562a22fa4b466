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

#include "docret/eval/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <unordered_set>

#include "docret/core/error.hpp"

namespace docret::eval {
namespace {

std::string_view kind_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kNdcg: return "ndcg";
    case MetricKind::kRecall: return "recall";
    case MetricKind::kMap: return "map";
    case MetricKind::kMrr: return "mrr";
  }
  return "?";
}

using QueryFn = std::function<double(const RankedList&,
                                     const std::map<DocId, int>&, std::size_t)>;

int grade_in(const std::map<DocId, int>& judged, const DocId& d) {
  const auto it = judged.find(d);
  return it == judged.end() ? 0 : it->second;
}

double log2_discount(std::size_t rank) {
  return 1.0 / std::log2(static_cast<double>(rank) + 1.0);
}

double ndcg(const RankedList& list, const std::map<DocId, int>& judged,
            std::size_t k) {
  double dcg = 0.0;
  for (std::size_t i = 0; i < std::min(k, list.size()); ++i) {
    dcg += grade_in(judged, list[i].doc) * log2_discount(i + 1);
  }
  std::vector<int> ideal;
  for (const auto& [d, g] : judged) {
    if (g > 0) ideal.push_back(g);
  }
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  double idcg = 0.0;
  for (std::size_t i = 0; i < std::min(k, ideal.size()); ++i) {
    idcg += ideal[i] * log2_discount(i + 1);
  }
  return dcg / idcg;
}

std::size_t positives(const std::map<DocId, int>& judged) {
  return static_cast<std::size_t>(std::count_if(
      judged.begin(), judged.end(), [](const auto& e) { return e.second > 0; }));
}

double recall(const RankedList& list, const std::map<DocId, int>& judged,
              std::size_t k) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, list.size()); ++i) {
    hits += grade_in(judged, list[i].doc) > 0 ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(positives(judged));
}

double average_precision(const RankedList& list,
                         const std::map<DocId, int>& judged, std::size_t k) {
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min(k, list.size()); ++i) {
    if (grade_in(judged, list[i].doc) > 0) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(positives(judged));
}

double reciprocal_rank(const RankedList& list,
                       const std::map<DocId, int>& judged, std::size_t k) {
  for (std::size_t i = 0; i < std::min(k, list.size()); ++i) {
    if (grade_in(judged, list[i].doc) > 0) return 1.0 / double(i + 1);
  }
  return 0.0;
}

QueryFn query_fn(MetricKind kind) {
  switch (kind) {
    case MetricKind::kNdcg: return ndcg;
    case MetricKind::kRecall: return recall;
    case MetricKind::kMap: return average_precision;
    case MetricKind::kMrr: return reciprocal_rank;
  }
  fail(ErrorCode::kInvalidArgument, "unknown metric kind");
}

RankedList canonical(const RankedList& list, const QueryId& q) {
  std::unordered_set<std::string_view> seen;
  for (const auto& e : list) {
    if (!seen.insert(e.doc).second) {
      fail(ErrorCode::kDuplicateId,
           "doc '" + e.doc + "' repeated in run for query '" + q + "'");
    }
  }
  RankedList sorted = list;
  sort_ranked(sorted);
  return sorted;
}

}  // namespace

std::string MetricSpec::name() const {
  return std::string(kind_name(kind)) + "@" + std::to_string(k);
}

MetricSpec MetricSpec::parse(std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos) {
    fail(ErrorCode::kInvalidArgument, "metric '" + std::string(text) +
                                          "' must look like name@k");
  }
  const auto head = text.substr(0, at);
  const auto tail = text.substr(at + 1);
  MetricSpec spec;
  bool known = false;
  for (const auto kind : {MetricKind::kNdcg, MetricKind::kRecall,
                          MetricKind::kMap, MetricKind::kMrr}) {
    if (head == kind_name(kind)) {
      spec.kind = kind;
      known = true;
    }
  }
  const auto* end = tail.data() + tail.size();
  const auto [ptr, ec] = std::from_chars(tail.data(), end, spec.k);
  if (!known || tail.empty() || ec != std::errc() || ptr != end || spec.k == 0) {
    fail(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(text) + "'");
  }
  return spec;
}

std::vector<MetricSpec> default_metrics() {
  return {{MetricKind::kNdcg, 5},  {MetricKind::kNdcg, 10},
          {MetricKind::kRecall, 5}, {MetricKind::kRecall, 10},
          {MetricKind::kMap, 10},  {MetricKind::kMrr, 10}};
}

std::vector<MetricSpec> parse_metric_list(std::string_view csv) {
  std::vector<MetricSpec> specs;
  std::size_t start = 0;
  while (start <= csv.size()) {
    auto end = csv.find(',', start);
    if (end == std::string_view::npos) end = csv.size();
    const auto item = csv.substr(start, end - start);
    if (!item.empty()) {
      const auto spec = MetricSpec::parse(item);
      if (std::find(specs.begin(), specs.end(), spec) == specs.end()) {
        specs.push_back(spec);
      }
    }
    start = end + 1;
  }
  if (specs.empty()) fail(ErrorCode::kInvalidArgument, "no metrics requested");
  return specs;
}

MetricResult compute_metric(const RetrievalRun& run, const QrelSet& qrels,
                            const MetricSpec& spec) {
  if (spec.k == 0) fail(ErrorCode::kInvalidArgument, "metric cutoff k must be >= 1");
  const auto fn = query_fn(spec.kind);
  MetricResult result{spec, {}, 0.0};
  const RankedList empty;
  double sum = 0.0;
  for (const auto& [q, judged] : qrels) {
    if (positives(judged) == 0) continue;
    const auto it = run.find(q);
    const double v =
        fn(it == run.end() ? empty : canonical(it->second, q), judged, spec.k);
    result.per_query.emplace(q, v);
    sum += v;
  }
  if (!result.per_query.empty()) {
    result.mean = sum / static_cast<double>(result.per_query.size());
  }
  return result;
}

MetricResult ndcg_at_k(const RetrievalRun& run, const QrelSet& qrels,
                       std::size_t k) {
  return compute_metric(run, qrels, {MetricKind::kNdcg, k});
}

MetricResult recall_at_k(const RetrievalRun& run, const QrelSet& qrels,
                         std::size_t k) {
  return compute_metric(run, qrels, {MetricKind::kRecall, k});
}

MetricResult map_at_k(const RetrievalRun& run, const QrelSet& qrels,
                      std::size_t k) {
  return compute_metric(run, qrels, {MetricKind::kMap, k});
}

MetricResult mrr_at_k(const RetrievalRun& run, const QrelSet& qrels,
                      std::size_t k) {
  return compute_metric(run, qrels, {MetricKind::kMrr, k});
}

const MetricResult& MetricReport::at(std::string_view name) const {
  for (const auto& m : metrics) {
    if (m.spec.name() == name) return m;
  }
  fail(ErrorCode::kInvalidArgument, "metric '" + std::string(name) + "' not in report");
}

MetricReport evaluate(const RetrievalRun& run, const QrelSet& qrels,
                      const std::vector<MetricSpec>& specs) {
  MetricReport report;
  for (const auto& spec : specs) {
    report.metrics.push_back(compute_metric(run, qrels, spec));
  }
  return report;
}

std::size_t run_depth(const RetrievalRun& run) {
  std::size_t depth = 0;
  for (const auto& [q, list] : run) depth = std::max(depth, list.size());
  return depth;
}

std::optional<double> relative_improvement(double a, double b) {
  if (b == 0.0) return std::nullopt;
  return (a - b) / b;
}

std::vector<MetricComparison> compare_runs(const MetricReport& a,
                                           const MetricReport& b) {
  if (a.metrics.size() != b.metrics.size()) {
    fail(ErrorCode::kQueryMismatch, "reports cover different metrics");
  }
  std::vector<MetricComparison> rows;
  for (const auto& ma : a.metrics) {
    const auto name = ma.spec.name();
    const auto it = std::find_if(b.metrics.begin(), b.metrics.end(),
                                 [&](const auto& m) { return m.spec == ma.spec; });
    if (it == b.metrics.end()) {
      fail(ErrorCode::kQueryMismatch, "metric " + name + " missing from report B");
    }
    const auto& mb = *it;
    const bool same_queries =
        ma.per_query.size() == mb.per_query.size() &&
        std::equal(ma.per_query.begin(), ma.per_query.end(),
                   mb.per_query.begin(),
                   [](const auto& x, const auto& y) { return x.first == y.first; });
    if (!same_queries) {
      fail(ErrorCode::kQueryMismatch, "reports evaluate different queries for " + name);
    }
    rows.push_back({name, ma.mean, mb.mean, ma.mean - mb.mean,
                    relative_improvement(ma.mean, mb.mean)});
  }
  return rows;
}

}  // namespace docret::eval
