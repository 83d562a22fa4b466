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

#include "docret/mining/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "docret/core/error.hpp"
#include "docret/mining/tokenizer.hpp"

namespace docret::mining {

Bm25Index::Bm25Index(std::vector<TextSidecar> sidecars, Bm25Params params)
    : params_(params) {
  if (sidecars.empty()) fail(ErrorCode::kInvalidArgument, "empty BM25 corpus");
  if (params.k1 < 0.0 || params.b < 0.0 || params.b > 1.0) {
    fail(ErrorCode::kInvalidArgument, "BM25 needs k1 >= 0 and b in [0, 1]");
  }
  std::unordered_set<DocId> seen;
  std::size_t total = 0;
  for (std::size_t i = 0; i < sidecars.size(); ++i) {
    auto& s = sidecars[i];
    if (!seen.insert(s.doc).second) {
      fail(ErrorCode::kDuplicateId, "duplicate sidecar id '" + s.doc + "'");
    }
    const auto tokens = tokenize(s.text);
    std::unordered_map<std::string, std::size_t> tf;
    for (const auto& t : tokens) ++tf[t];
    for (auto& [term, count] : tf) postings_[term].push_back({i, count});
    ids_.push_back(std::move(s.doc));
    lengths_.push_back(tokens.size());
    total += tokens.size();
  }
  avg_len_ = static_cast<double>(total) / static_cast<double>(ids_.size());
}

double Bm25Index::idf(std::string_view term) const {
  const auto it = postings_.find(std::string(term));
  const double df = it == postings_.end() ? 0.0 : double(it->second.size());
  const double n = static_cast<double>(ids_.size());
  return std::log1p((n - df + 0.5) / (df + 0.5));
}

RankedList Bm25Index::rank(std::string_view query, std::size_t top_n) const {
  const auto tokens = tokenize(query);
  if (tokens.empty()) fail(ErrorCode::kEmptyQuery, "query has no tokens");
  const std::set<std::string> terms(tokens.begin(), tokens.end());

  std::vector<double> scores(ids_.size(), 0.0);
  for (const auto& term : terms) {
    const auto it = postings_.find(term);
    if (it == postings_.end()) continue;
    const double w = idf(term);
    for (const auto& p : it->second) {
      const double tf = static_cast<double>(p.tf);
      const double len_norm =
          avg_len_ > 0.0 ? double(lengths_[p.doc]) / avg_len_ : 0.0;
      const double denom =
          tf + params_.k1 * (1.0 - params_.b + params_.b * len_norm);
      scores[p.doc] += w * tf * (params_.k1 + 1.0) / denom;
    }
  }
  RankedList list;
  list.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    list.push_back({ids_[i], scores[i]});
  }
  return top_k(std::move(list), top_n);
}

RankedList bm25_rank(std::string_view query,
                     const std::vector<TextSidecar>& sidecars,
                     std::size_t top_n) {
  return Bm25Index(sidecars).rank(query, top_n);
}

}  // namespace docret::mining
