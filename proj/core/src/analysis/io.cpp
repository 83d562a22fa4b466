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

#include "docret/analysis/io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "docret/core/error.hpp"

namespace docret::analysis {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

std::map<std::string, PointLabel> read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  std::map<std::string, PointLabel> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, '\t')) f.push_back(field);
    const auto loc = path.string() + ":" + std::to_string(line_no);
    if (f.size() != 3 || f[0].empty()) {
      fail(ErrorCode::kParseError, loc + ": expected id, language, role");
    }
    if (f[2] != "query" && f[2] != "document") {
      fail(ErrorCode::kParseError, loc + ": role must be query or document");
    }
    if (!labels.emplace(f[0], PointLabel{f[0], f[1], f[2]}).second) {
      fail(ErrorCode::kDuplicateId, loc + ": label for '" + f[0] + "' repeated");
    }
  }
  return labels;
}

void write_projection_csv(const std::filesystem::path& path,
                          const Projection2D& projection,
                          const std::string& checkpoint) {
  auto out = open_out(path);
  out << "x,y,language,role,checkpoint\n";
  for (std::size_t i = 0; i < projection.points.size(); ++i) {
    const PointLabel none;
    const auto& l = projection.labels.empty() ? none : projection.labels[i];
    out << num(projection.points[i][0]) << ',' << num(projection.points[i][1])
        << ',' << csv_field(l.language) << ',' << csv_field(l.role) << ','
        << csv_field(checkpoint) << '\n';
  }
  if (!out) fail(ErrorCode::kIoError, "short write to " + path.string());
}

void write_variance_json(
    const std::filesystem::path& path,
    const std::map<std::string, std::array<double, 2>>& ratios) {
  json j = json::object();
  for (const auto& [name, r] : ratios) j[name] = {r[0], r[1]};
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_heatmaps(const std::filesystem::path& dir,
                    const std::vector<HeatmapGrid>& grids) {
  std::filesystem::create_directories(dir);
  json tokens = json::array();
  double total = 0.0;
  for (const auto& g : grids) {
    auto out = open_out(dir / ("token_" + std::to_string(g.query_token) + ".csv"));
    out << "row,col,value\n";
    for (std::size_t r = 0; r < g.shape.rows; ++r) {
      for (std::size_t c = 0; c < g.shape.cols; ++c) {
        out << r << ',' << c << ',' << num(g.values[r * g.shape.cols + c]) << '\n';
      }
    }
    tokens.push_back({{"query_token", g.query_token},
                      {"token_max", g.token_max},
                      {"argmax", {g.argmax_row, g.argmax_col}}});
    total += g.token_max;
  }
  auto out = open_out(dir / "summary.json");
  out << json{{"tokens", tokens}, {"maxsim", total}}.dump(2) << '\n';
}

}  // namespace docret::analysis
