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

#include "docret/scoring/dense_index.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_set>

#include "docret/core/binary_io.hpp"
#include "docret/core/error.hpp"
#include "docret/core/vector_math.hpp"

namespace docret::scoring {
namespace {

using nlohmann::json;

json params_to_json(const HnswParams& p) {
  return {{"m", p.m},
          {"ef_construction", p.ef_construction},
          {"ef_search", p.ef_search},
          {"seed", p.seed}};
}

HnswParams params_from_json(const json& j) {
  HnswParams p;
  p.m = j.at("m").get<std::size_t>();
  p.ef_construction = j.at("ef_construction").get<std::size_t>();
  p.ef_search = j.at("ef_search").get<std::size_t>();
  p.seed = j.at("seed").get<std::uint64_t>();
  return p;
}

json read_meta(const std::filesystem::path& dir) {
  const auto path = dir / "meta.json";
  const auto text = binary::read_file(path);
  json meta = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (meta.is_discarded() || !meta.is_object()) {
    fail(ErrorCode::kParseError, path.string() + ": not a JSON object");
  }
  const auto version = meta.value("format_version", 0);
  if (version != kIndexFormatVersion) {
    fail(ErrorCode::kParseError,
         path.string() + ": unsupported format_version " + std::to_string(version));
  }
  return meta;
}

std::vector<DocId> read_ids(const std::filesystem::path& path,
                            std::size_t expected) {
  std::istringstream in(binary::read_file(path));
  std::vector<DocId> ids;
  std::string line;
  while (std::getline(in, line)) ids.push_back(line);
  if (ids.size() != expected) {
    fail(ErrorCode::kParseError, path.string() + ": expected " +
                                     std::to_string(expected) + " ids, found " +
                                     std::to_string(ids.size()));
  }
  return ids;
}

std::string ids_text(const std::vector<DocId>& ids) {
  std::string out;
  for (const auto& id : ids) {
    out += id;
    out += '\n';
  }
  return out;
}

}  // namespace

void validate_id(const std::string& id) {
  if (id.empty()) fail(ErrorCode::kInvalidArgument, "empty document id");
  if (id.find_first_of("\t\n\r") != std::string::npos) {
    fail(ErrorCode::kInvalidArgument,
         "document id contains tab or newline: '" + id + "'");
  }
}

std::string read_index_kind(const std::filesystem::path& dir) {
  return read_meta(dir).value("kind", std::string("dense"));
}

DenseIndex DenseIndex::build(std::vector<DenseRecord> records,
                             std::optional<HnswParams> ann) {
  if (records.empty()) {
    fail(ErrorCode::kInvalidArgument, "dense index needs at least one record");
  }
  DenseIndex index;
  index.dim_ = records.front().embedding.dim();
  index.ids_.reserve(records.size());
  index.matrix_.reserve(records.size() * index.dim_);
  index.row_norms_.reserve(records.size());
  std::unordered_set<std::string> seen;
  for (auto& r : records) {
    validate_id(r.id);
    if (!seen.insert(r.id).second) {
      fail(ErrorCode::kDuplicateId, "duplicate document id '" + r.id + "'");
    }
    if (r.embedding.dim() != index.dim_) {
      fail(ErrorCode::kDimMismatch,
           "document '" + r.id + "' has dim " + std::to_string(r.embedding.dim()) +
               ", index dim " + std::to_string(index.dim_));
    }
    const auto unit = normalize(r.embedding);
    index.matrix_.insert(index.matrix_.end(), unit.values().begin(),
                         unit.values().end());
    index.row_norms_.push_back(unit.norm());
    index.ids_.push_back(std::move(r.id));
  }
  if (ann) index.ann_ = HnswGraph::build(index.matrix_, index.dim_, *ann);
  return index;
}

double DenseIndex::score_row(std::size_t i, std::span<const float> q,
                             double q_norm) const {
  return dot(q, row(i)) / (q_norm * row_norms_[i]);
}

RankedList DenseIndex::search(const DenseEmbedding& q, std::size_t k,
                              SearchMode mode,
                              std::optional<std::size_t> ef_search) const {
  if (q.dim() != dim_) {
    fail(ErrorCode::kDimMismatch, "query dim " + std::to_string(q.dim()) +
                                      " != index dim " + std::to_string(dim_));
  }
  if (k == 0) fail(ErrorCode::kInvalidArgument, "k must be >= 1");
  const double q_norm = q.norm();
  if (q_norm == 0.0) fail(ErrorCode::kZeroVector, "query vector is zero");

  RankedList scored;
  if (mode == SearchMode::kExact) {
    scored.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      scored.push_back({ids_[i], score_row(i, q.values(), q_norm)});
    }
  } else {
    if (!ann_) fail(ErrorCode::kAnnUnavailable, "index was built without HNSW");
    const auto unit = normalize(q);
    const auto ef = ef_search.value_or(ann_->params().ef_search);
    for (std::uint32_t i : ann_->search(matrix_, dim_, unit.values(), k, ef)) {
      scored.push_back({ids_[i], score_row(i, q.values(), q_norm)});
    }
  }
  return top_k(std::move(scored), k);
}

void DenseIndex::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  json meta = {{"format_version", kIndexFormatVersion},
               {"kind", "dense"},
               {"dim", dim_},
               {"count", size()},
               {"ann", ann_ ? params_to_json(ann_->params()) : json(nullptr)}};
  binary::write_file(dir / "meta.json", meta.dump(2) + "\n");
  binary::write_file(dir / "ids.txt", ids_text(ids_));
  {
    std::ofstream out(dir / "vectors.bin", std::ios::binary);
    if (!out) fail(ErrorCode::kIoError, "cannot write vectors.bin");
    binary::write_f32s(out, matrix_);
  }
  const auto hnsw_path = dir / "hnsw.bin";
  if (ann_) {
    std::ofstream out(hnsw_path, std::ios::binary);
    if (!out) fail(ErrorCode::kIoError, "cannot write hnsw.bin");
    ann_->write(out);
  } else {
    std::filesystem::remove(hnsw_path);
  }
}

DenseIndex DenseIndex::load(const std::filesystem::path& dir) {
  const json meta = read_meta(dir);
  if (meta.value("kind", std::string("dense")) != "dense") {
    fail(ErrorCode::kParseError, dir.string() + " is not a dense index");
  }
  DenseIndex index;
  std::size_t count = 0;
  try {
    index.dim_ = meta.at("dim").get<std::size_t>();
    count = meta.at("count").get<std::size_t>();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, "meta.json: " + std::string(e.what()));
  }
  if (index.dim_ == 0 || count == 0) {
    fail(ErrorCode::kParseError, "meta.json: dim and count must be positive");
  }
  index.ids_ = read_ids(dir / "ids.txt", count);
  {
    std::ifstream in(dir / "vectors.bin", std::ios::binary);
    if (!in) fail(ErrorCode::kIoError, "cannot open vectors.bin");
    index.matrix_ = binary::read_f32s(in, count * index.dim_, "vectors.bin");
    if (in.peek() != std::char_traits<char>::eof()) {
      fail(ErrorCode::kParseError, "vectors.bin has trailing bytes");
    }
  }
  index.row_norms_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    index.row_norms_[i] = l2_norm(index.row(i));
    if (index.row_norms_[i] == 0.0) {
      fail(ErrorCode::kZeroVector, "stored row " + std::to_string(i) + " is zero");
    }
  }
  if (meta.contains("ann") && !meta["ann"].is_null()) {
    const auto params = params_from_json(meta["ann"]);
    std::ifstream in(dir / "hnsw.bin", std::ios::binary);
    if (!in) fail(ErrorCode::kIoError, "meta.json names an ANN graph but hnsw.bin is missing");
    index.ann_ = HnswGraph::read(in, count, params);
  }
  return index;
}

}  // namespace docret::scoring
