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
#include <vector>

#include "docret/core/embedding.hpp"
#include "docret/core/ranking.hpp"
#include "docret/scoring/dense_index.hpp"

namespace docret::mining {

/// Exact cosine top-n of `q` against `index`.
RankedList embedding_rank(const DenseEmbedding& q,
                          const scoring::DenseIndex& index, std::size_t top_n);

/// Reciprocal rank fusion: score(d) = sum over input lists containing d of
/// 1 / (rrf_k + rank), rank 1-based by list position. A doc repeated within
/// one list counts once, at its best rank. Contributions are summed in
/// ascending-rank order so the result does not depend on the order of
/// `rankings`. Throws kInvalidArgument when rrf_k <= 0.
RankedList rrf_fuse(const std::vector<RankedList>& rankings, double rrf_k);

}  // namespace docret::mining
