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

#include <filesystem>
#include <vector>

#include "docret/eval/metrics.hpp"

namespace docret::eval {

/// TSV `query-id <TAB> doc-id <TAB> rank <TAB> score`, rank 1-based, scores
/// in shortest round-trip form.
void write_run(const std::filesystem::path& path, const RetrievalRun& run);
/// Lists are ordered by the rank column. Throws kParseError, kDuplicateId.
RetrievalRun read_run(const std::filesystem::path& path);

/// `{"metrics": [{"name", "mean", "queries", "per_query": {...}}]}`.
void write_report_json(const std::filesystem::path& path,
                       const MetricReport& report);
MetricReport read_report_json(const std::filesystem::path& path);

/// Plain-text means table followed by one per-query table per metric.
void write_report_text(const std::filesystem::path& path,
                       const MetricReport& report);

/// Comparison table; undefined relative values print as "undefined".
void write_comparison_text(const std::filesystem::path& path,
                           const std::vector<MetricComparison>& rows);

}  // namespace docret::eval
