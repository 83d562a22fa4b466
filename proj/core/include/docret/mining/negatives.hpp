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
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "docret/core/ranking.hpp"

namespace docret::mining {

struct MiningConfig {
  std::size_t k = 3;           // negatives per query
  std::size_t pool_size = 20;  // fused-ranking cut sampled from
  double rrf_k = 60.0;
  std::vector<int> page_window{-1, 1, -2, 2, -3, 3};
  std::uint64_t seed = 42;

  /// Throws kInvalidArgument: k == 0, k > pool_size, rrf_k <= 0, or a zero
  /// offset in the page window.
  void validate() const;
};

/// `k` ids drawn uniformly without replacement from the first `pool_size`
/// entries of `fused` after removing `positive` and any `also_exclude` ids.
/// Returned in fused-rank order. Throws kPoolTooSmall.
std::vector<DocId> mine_negatives(const DocId& positive, const RankedList& fused,
                                  const MiningConfig& config,
                                  std::mt19937_64& rng,
                                  std::span<const DocId> also_exclude = {});

/// As above with a generator seeded from `config.seed`.
std::vector<DocId> mine_negatives(const DocId& positive, const RankedList& fused,
                                  const MiningConfig& config);

struct PageRef {
  DocId doc;
  std::string source_doc;
  std::size_t page_no = 0;
};

/// Pages of the same source document at the configured offsets. When more
/// than `k` such pages exist, `k` are sampled uniformly; the result is
/// ordered closest offset first (negative offset before positive on ties).
/// Throws kNoNeighbors when no page lies in the window (always the case for
/// single-page sources), kInvalidArgument for an unknown source, and
/// kDuplicateId when (source_doc, page_no) repeats.
std::vector<DocId> page_neighbor_negatives(const PageRef& positive,
                                           const std::vector<PageRef>& pages,
                                           const MiningConfig& config,
                                           std::mt19937_64& rng);

/// Uniform integer in [0, n) by rejection; identical on every platform.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);

}  // namespace docret::mining
