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

#include "docret/mining/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "docret/core/error.hpp"

namespace docret::mining {

RankedList embedding_rank(const DenseEmbedding& q,
                          const scoring::DenseIndex& index, std::size_t top_n) {
  return index.search(q, top_n, scoring::SearchMode::kExact);
}

RankedList rrf_fuse(const std::vector<RankedList>& rankings, double rrf_k) {
  if (!(rrf_k > 0.0) || !std::isfinite(rrf_k)) {
    fail(ErrorCode::kInvalidArgument, "rrf_k must be positive");
  }
  std::map<DocId, std::vector<std::size_t>> ranks;
  for (const auto& list : rankings) {
    std::unordered_set<std::string_view> seen;
    for (std::size_t pos = 0; pos < list.size(); ++pos) {
      if (!seen.insert(list[pos].doc).second) continue;
      ranks[list[pos].doc].push_back(pos + 1);
    }
  }
  RankedList fused;
  fused.reserve(ranks.size());
  for (auto& [doc, rs] : ranks) {
    std::sort(rs.begin(), rs.end());
    double score = 0.0;
    for (const auto r : rs) score += 1.0 / (rrf_k + static_cast<double>(r));
    fused.push_back({doc, score});
  }
  sort_ranked(fused);
  return fused;
}

}  // namespace docret::mining
