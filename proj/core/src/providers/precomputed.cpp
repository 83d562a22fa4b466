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

#include "docret/providers/precomputed.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "docret/core/error.hpp"
#include "docret/core/utf8.hpp"
#include "docret/core/vector_math.hpp"

namespace docret::providers {
namespace {

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<float> parse_row(std::string_view text, const std::string& loc) {
  std::vector<float> row;
  for (auto field : split(text, ',')) {
    field = utf8::trim(field);
    float v = 0.0f;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
      fail(ErrorCode::kParseError,
           loc + ": bad number '" + std::string(field) + "'");
    }
    row.push_back(v);
  }
  return row;
}

void append_number(std::string& out, float v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

void append_row(std::string& out, std::span<const float> row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out.push_back(',');
    append_number(out, row[i]);
  }
}

}  // namespace

std::size_t EmbeddingRecord::dim() const noexcept {
  if (const auto* d = std::get_if<DenseEmbedding>(&payload)) return d->dim();
  return std::get<MultiVectorEmbedding>(payload).dim();
}

EmbeddingTable parse_precomputed(std::istream& in, std::string_view source) {
  EmbeddingTable table;
  std::optional<RecordKind> file_kind;
  std::size_t file_dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::trim(line).empty()) continue;
    const std::string loc = where(source, line_no);
    const auto fields = split(line, '\t');
    if (fields.size() != 3) {
      fail(ErrorCode::kParseError, loc + ": expected 3 tab-separated fields");
    }
    const std::string id(fields[0]);
    if (id.empty()) fail(ErrorCode::kParseError, loc + ": empty id");

    EmbeddingRecord record{id, DenseEmbedding({0.0f})};
    if (fields[1] == "dense") {
      auto values = parse_row(fields[2], loc);
      if (squared_norm(values) == 0.0) {
        fail(ErrorCode::kZeroVector, loc + ": zero vector for '" + id + "'");
      }
      record.payload = DenseEmbedding(std::move(values));
    } else if (fields[1] == "mv") {
      std::vector<std::vector<float>> rows;
      for (const auto r : split(fields[2], ';')) {
        rows.push_back(parse_row(r, loc));
        if (squared_norm(rows.back()) == 0.0) {
          fail(ErrorCode::kZeroVector, loc + ": zero token row for '" + id + "'");
        }
      }
      for (const auto& r : rows) {
        if (r.size() != rows.front().size()) {
          fail(ErrorCode::kDimMismatch, loc + ": ragged token rows");
        }
      }
      record.payload = MultiVectorEmbedding::from_rows(rows);
    } else {
      fail(ErrorCode::kParseError,
           loc + ": unknown kind '" + std::string(fields[1]) + "'");
    }

    if (!file_kind) {
      file_kind = record.kind();
      file_dim = record.dim();
    } else if (*file_kind != record.kind()) {
      fail(ErrorCode::kParseError, loc + ": file mixes dense and mv records");
    } else if (file_dim != record.dim()) {
      fail(ErrorCode::kDimMismatch, loc + ": dim " + std::to_string(record.dim()) +
                                        " differs from " +
                                        std::to_string(file_dim));
    }
    if (!table.emplace(id, std::move(record)).second) {
      fail(ErrorCode::kDuplicateId, loc + ": duplicate id '" + id + "'");
    }
  }
  return table;
}

EmbeddingTable load_precomputed(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  return parse_precomputed(in, path.string());
}

void write_precomputed(std::ostream& out, const EmbeddingTable& table) {
  std::string line;
  for (const auto& [id, record] : table) {
    line.clear();
    line += id;
    if (const auto* d = std::get_if<DenseEmbedding>(&record.payload)) {
      line += "\tdense\t";
      append_row(line, d->values());
    } else {
      const auto& m = std::get<MultiVectorEmbedding>(record.payload);
      line += "\tmv\t";
      for (std::size_t t = 0; t < m.n_tokens(); ++t) {
        if (t > 0) line.push_back(';');
        append_row(line, m.row(t));
      }
    }
    line.push_back('\n');
    out << line;
  }
}

void save_precomputed(const std::filesystem::path& path,
                      const EmbeddingTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  write_precomputed(out, table);
}

PrecomputedProvider::PrecomputedProvider(PrecomputedSpec spec)
    : kind_(spec), table_(load_precomputed(spec.path)) {}

PrecomputedProvider::PrecomputedProvider(PrecomputedSpec spec,
                                         EmbeddingTable table)
    : kind_(std::move(spec)), table_(std::move(table)) {}

const EmbeddingRecord& PrecomputedProvider::lookup(std::string_view id) const {
  const auto key = utf8::trim(id);
  if (key.empty()) fail(ErrorCode::kEmptyText, "lookup id is empty");
  const auto it = table_.find(std::string(key));
  if (it == table_.end()) {
    fail(ErrorCode::kInvalidArgument,
         "no precomputed embedding for '" + std::string(key) + "'");
  }
  return it->second;
}

DenseEmbedding PrecomputedProvider::embed_text(std::string_view text) const {
  const auto& record = lookup(text);
  const auto* d = std::get_if<DenseEmbedding>(&record.payload);
  if (d == nullptr) {
    fail(ErrorCode::kDimMismatch, "record '" + record.id + "' is multivector");
  }
  return normalize(*d);
}

MultiVectorEmbedding PrecomputedProvider::embed_text_multivector(
    std::string_view text, std::size_t max_tokens) const {
  if (max_tokens == 0) {
    fail(ErrorCode::kInvalidArgument, "max_tokens must be >= 1");
  }
  const auto& record = lookup(text);
  const auto* m = std::get_if<MultiVectorEmbedding>(&record.payload);
  if (m == nullptr) {
    fail(ErrorCode::kDimMismatch, "record '" + record.id + "' is dense");
  }
  if (m->n_tokens() <= max_tokens) return normalize_rows(*m);
  const auto head = m->data().first(max_tokens * m->dim());
  return normalize_rows(MultiVectorEmbedding(
      max_tokens, m->dim(), std::vector<float>(head.begin(), head.end())));
}

}  // namespace docret::providers
