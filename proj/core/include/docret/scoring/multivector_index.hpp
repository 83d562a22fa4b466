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
#include <vector>

#include "docret/core/embedding.hpp"
#include "docret/core/ranking.hpp"

namespace docret::scoring {

struct MultiVectorRecord {
  DocId id;
  MultiVectorEmbedding embedding;
};

/// Exact late-interaction index; every query is scored against every doc.
class MultiVectorIndex {
 public:
  static MultiVectorIndex build(std::vector<MultiVectorRecord> records);

  RankedList search(const MultiVectorEmbedding& q, std::size_t k,
                    bool normalized) const;

  std::size_t size() const noexcept { return ids_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t total_tokens() const noexcept;
  const std::vector<DocId>& ids() const noexcept { return ids_; }
  const MultiVectorEmbedding& doc(std::size_t i) const { return docs_[i]; }

  // meta.json, ids.txt, token_counts.bin (u32 per doc), vectors.bin.
  void save(const std::filesystem::path& dir) const;
  static MultiVectorIndex load(const std::filesystem::path& dir);

 private:
  std::vector<DocId> ids_;
  std::vector<MultiVectorEmbedding> docs_;
  std::size_t dim_ = 0;
};

}  // namespace docret::scoring
