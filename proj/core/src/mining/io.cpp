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

#include "docret/mining/io.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "docret/core/error.hpp"
#include "docret/core/utf8.hpp"

namespace docret::mining {
namespace {

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  return in;
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, '\t')) out.push_back(field);
  if (!line.empty() && line.back() == '\t') out.emplace_back();
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::vector<TextSidecar> read_sidecars(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<TextSidecar> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("_id") ||
        !j["_id"].is_string() ||
        (j.contains("text") && !j["text"].is_string())) {
      fail(ErrorCode::kParseError,
           where(path, line_no) + ": expected {\"_id\": str, \"text\": str}");
    }
    out.push_back({j["_id"].get<std::string>(), j.value("text", std::string())});
  }
  return out;
}

std::vector<PageRef> read_pages(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<PageRef> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (line_no == 1 && line.starts_with("doc-id")) continue;
    const auto f = split_tabs(line);
    std::size_t page = 0;
    const bool ok =
        f.size() == 3 && !f[0].empty() && !f[1].empty() &&
        std::from_chars(f[2].data(), f[2].data() + f[2].size(), page).ec ==
            std::errc() &&
        std::to_string(page) == f[2];
    if (!ok) {
      fail(ErrorCode::kParseError,
           where(path, line_no) + ": expected doc-id, source-doc, page-no");
    }
    out.push_back({f[0], f[1], page});
  }
  return out;
}

void write_negatives(const std::filesystem::path& path,
                     const std::vector<MinedNegatives>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  for (const auto& r : rows) {
    out << r.query << '\t' << r.positive << '\t';
    for (std::size_t i = 0; i < r.negatives.size(); ++i) {
      if (i > 0) out << ',';
      out << r.negatives[i];
    }
    out << '\n';
  }
  if (!out) fail(ErrorCode::kIoError, "short write to " + path.string());
}

std::vector<MinedNegatives> read_negatives(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<MinedNegatives> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f.size() != 3) {
      fail(ErrorCode::kParseError, where(path, line_no) + ": expected 3 fields");
    }
    MinedNegatives row{f[0], f[1], {}};
    std::stringstream ss(f[2]);
    std::string id;
    while (std::getline(ss, id, ',')) row.negatives.push_back(id);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace docret::mining
