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

#include "docret/eval/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_set>

#include "docret/core/error.hpp"

namespace docret::eval {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

std::string shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) fail(ErrorCode::kIoError, "short write to " + path.string());
}

}  // namespace

void write_run(const std::filesystem::path& path, const RetrievalRun& run) {
  auto out = open_out(path);
  for (const auto& [q, list] : run) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      out << q << '\t' << list[i].doc << '\t' << (i + 1) << '\t'
          << shortest(list[i].score) << '\n';
    }
  }
  finish(out, path);
}

RetrievalRun read_run(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  std::map<QueryId, std::map<std::size_t, ScoredDoc>> by_rank;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto loc = path.string() + ":" + std::to_string(line_no);
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    std::size_t rank = 0;
    double score = 0.0;
    const bool ok =
        f.size() == 4 && !f[0].empty() && !f[1].empty() &&
        std::from_chars(f[2].data(), f[2].data() + f[2].size(), rank).ec ==
            std::errc() &&
        std::from_chars(f[3].data(), f[3].data() + f[3].size(), score).ec ==
            std::errc() &&
        rank >= 1 && std::isfinite(score);
    if (!ok) {
      fail(ErrorCode::kParseError,
           loc + ": expected query-id, doc-id, rank, score");
    }
    if (!by_rank[f[0]].emplace(rank, ScoredDoc{f[1], score}).second) {
      fail(ErrorCode::kDuplicateId, loc + ": rank repeated for query " + f[0]);
    }
  }
  RetrievalRun run;
  for (auto& [q, ranks] : by_rank) {
    auto& list = run[q];
    std::unordered_set<std::string> seen;
    for (auto& [rank, entry] : ranks) {
      if (!seen.insert(entry.doc).second) {
        fail(ErrorCode::kDuplicateId,
             path.string() + ": doc " + entry.doc + " repeated for query " + q);
      }
      list.push_back(std::move(entry));
    }
  }
  return run;
}

void write_report_json(const std::filesystem::path& path,
                       const MetricReport& report) {
  json metrics = json::array();
  for (const auto& m : report.metrics) {
    json per_query = json::object();
    for (const auto& [q, v] : m.per_query) per_query[q] = v;
    metrics.push_back({{"name", m.spec.name()},
                       {"mean", m.mean},
                       {"queries", m.per_query.size()},
                       {"per_query", per_query}});
  }
  auto out = open_out(path);
  out << json{{"metrics", metrics}}.dump(2) << '\n';
  finish(out, path);
}

MetricReport read_report_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("metrics") || !j["metrics"].is_array()) {
    fail(ErrorCode::kParseError, path.string() + ": not a metric report");
  }
  MetricReport report;
  try {
    for (const auto& m : j["metrics"]) {
      MetricResult r;
      r.spec = MetricSpec::parse(m.at("name").get<std::string>());
      r.mean = m.at("mean").get<double>();
      for (const auto& [q, v] : m.at("per_query").items()) {
        r.per_query.emplace(q, v.get<double>());
      }
      report.metrics.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, path.string() + ": " + e.what());
  } catch (const Error& e) {
    fail(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
  return report;
}

void write_report_text(const std::filesystem::path& path,
                       const MetricReport& report) {
  auto out = open_out(path);
  out << "metric\tmean\tqueries\n";
  for (const auto& m : report.metrics) {
    out << m.spec.name() << '\t' << fixed(m.mean, 6) << '\t'
        << m.per_query.size() << '\n';
  }
  for (const auto& m : report.metrics) {
    out << "\n[" << m.spec.name() << "]\nquery-id\tvalue\n";
    for (const auto& [q, v] : m.per_query) out << q << '\t' << fixed(v, 6) << '\n';
  }
  finish(out, path);
}

void write_comparison_text(const std::filesystem::path& path,
                           const std::vector<MetricComparison>& rows) {
  auto out = open_out(path);
  out << "metric\tmean_a\tmean_b\tdelta\trelative\n";
  for (const auto& r : rows) {
    out << r.name << '\t' << fixed(r.mean_a, 6) << '\t' << fixed(r.mean_b, 6)
        << '\t' << fixed(r.delta, 6) << '\t'
        << (r.relative ? fixed(*r.relative * 100.0, 2) + "%" : "undefined")
        << '\n';
  }
  finish(out, path);
}

}  // namespace docret::eval
