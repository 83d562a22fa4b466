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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docret/core/embedding.hpp"
#include "docret/core/ranking.hpp"
#include "docret/scoring/hnsw.hpp"

namespace docret::scoring {

enum class SearchMode { kExact, kAnn };

struct DenseRecord {
  DocId id;
  DenseEmbedding embedding;
};

inline constexpr int kIndexFormatVersion = 1;

/// Immutable exact-cosine index with an optional HNSW graph.
///
/// Rows are stored unit-normalized; scores are true cosines computed in
/// double. ANN results are the graph's candidates re-scored exactly.
class DenseIndex {
 public:
  /// Throws kInvalidArgument (no records / bad id), kDuplicateId,
  /// kDimMismatch, kZeroVector.
  static DenseIndex build(std::vector<DenseRecord> records,
                          std::optional<HnswParams> ann = std::nullopt);

  /// Top-k by cosine. `ef_search` overrides the graph default in ANN mode.
  /// Throws kDimMismatch, kAnnUnavailable, kInvalidArgument (k == 0).
  RankedList search(const DenseEmbedding& q, std::size_t k,
                    SearchMode mode = SearchMode::kExact,
                    std::optional<std::size_t> ef_search = std::nullopt) const;

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<DocId>& ids() const noexcept { return ids_; }
  std::span<const float> row(std::size_t i) const noexcept {
    return {matrix_.data() + i * dim_, dim_};
  }
  std::span<const float> matrix() const noexcept { return matrix_; }
  bool has_ann() const noexcept { return ann_.has_value(); }
  const HnswGraph* ann() const noexcept { return ann_ ? &*ann_ : nullptr; }

  /// Writes meta.json, ids.txt, vectors.bin and (if built) hnsw.bin.
  void save(const std::filesystem::path& dir) const;
  static DenseIndex load(const std::filesystem::path& dir);

 private:
  double score_row(std::size_t i, std::span<const float> q,
                   double q_norm) const;

  std::vector<DocId> ids_;
  std::size_t dim_ = 0;
  std::vector<float> matrix_;
  std::vector<double> row_norms_;
  std::optional<HnswGraph> ann_;
};

/// "dense" or "multivector", read from `<dir>/meta.json`.
std::string read_index_kind(const std::filesystem::path& dir);

/// Rejects ids that would break the line-oriented file formats.
void validate_id(const std::string& id);

}  // namespace docret::scoring
