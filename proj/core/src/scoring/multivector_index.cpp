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

#include "docret/scoring/multivector_index.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unordered_set>

#include "docret/core/binary_io.hpp"
#include "docret/core/error.hpp"
#include "docret/scoring/dense_index.hpp"
#include "docret/scoring/similarity.hpp"

namespace docret::scoring {

using nlohmann::json;

MultiVectorIndex MultiVectorIndex::build(std::vector<MultiVectorRecord> records) {
  if (records.empty()) {
    fail(ErrorCode::kInvalidArgument,
         "multivector index needs at least one record");
  }
  MultiVectorIndex index;
  index.dim_ = records.front().embedding.dim();
  std::unordered_set<std::string> seen;
  for (auto& r : records) {
    validate_id(r.id);
    if (!seen.insert(r.id).second) {
      fail(ErrorCode::kDuplicateId, "duplicate document id '" + r.id + "'");
    }
    if (r.embedding.dim() != index.dim_) {
      fail(ErrorCode::kDimMismatch, "document '" + r.id + "' has dim " +
                                        std::to_string(r.embedding.dim()));
    }
    index.docs_.push_back(normalize_rows(r.embedding));
    index.ids_.push_back(std::move(r.id));
  }
  return index;
}

std::size_t MultiVectorIndex::total_tokens() const noexcept {
  std::size_t total = 0;
  for (const auto& d : docs_) total += d.n_tokens();
  return total;
}

RankedList MultiVectorIndex::search(const MultiVectorEmbedding& q,
                                    std::size_t k, bool normalized) const {
  if (q.dim() != dim_) {
    fail(ErrorCode::kDimMismatch, "query dim " + std::to_string(q.dim()) +
                                      " != index dim " + std::to_string(dim_));
  }
  if (k == 0) fail(ErrorCode::kInvalidArgument, "k must be >= 1");
  RankedList scored;
  scored.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    scored.push_back({ids_[i], normalized ? maxsim_normalized(q, docs_[i])
                                          : maxsim(q, docs_[i])});
  }
  return top_k(std::move(scored), k);
}

void MultiVectorIndex::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const json meta = {{"format_version", kIndexFormatVersion},
                     {"kind", "multivector"},
                     {"dim", dim_},
                     {"count", size()},
                     {"total_tokens", total_tokens()},
                     {"ann", nullptr}};
  binary::write_file(dir / "meta.json", meta.dump(2) + "\n");
  std::string ids;
  for (const auto& id : ids_) ids += id + "\n";
  binary::write_file(dir / "ids.txt", ids);
  std::ofstream counts(dir / "token_counts.bin", std::ios::binary);
  std::ofstream vectors(dir / "vectors.bin", std::ios::binary);
  if (!counts || !vectors) fail(ErrorCode::kIoError, "cannot write index files");
  for (const auto& d : docs_) {
    binary::write_u32(counts, static_cast<std::uint32_t>(d.n_tokens()));
    binary::write_f32s(vectors, d.data());
  }
}

MultiVectorIndex MultiVectorIndex::load(const std::filesystem::path& dir) {
  const json meta = json::parse(binary::read_file(dir / "meta.json"), nullptr,
                                /*allow_exceptions=*/false);
  if (meta.is_discarded() || meta.value("kind", std::string()) != "multivector" ||
      meta.value("format_version", 0) != kIndexFormatVersion) {
    fail(ErrorCode::kParseError, dir.string() + " is not a multivector index");
  }
  const auto dim = meta.value("dim", std::size_t{0});
  const auto count = meta.value("count", std::size_t{0});
  if (dim == 0 || count == 0) {
    fail(ErrorCode::kParseError, "meta.json: dim and count must be positive");
  }
  std::istringstream id_stream(binary::read_file(dir / "ids.txt"));
  std::vector<MultiVectorRecord> records;
  std::ifstream counts(dir / "token_counts.bin", std::ios::binary);
  std::ifstream vectors(dir / "vectors.bin", std::ios::binary);
  if (!counts || !vectors) fail(ErrorCode::kIoError, "cannot open index files");
  std::string id;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(id_stream, id)) {
      fail(ErrorCode::kParseError, "ids.txt has fewer than count ids");
    }
    const auto n = binary::read_u32(counts, "token_counts.bin");
    auto data = binary::read_f32s(vectors, std::size_t{n} * dim, "vectors.bin");
    records.push_back({id, MultiVectorEmbedding(n, dim, std::move(data))});
  }
  return build(std::move(records));
}

}  // namespace docret::scoring
