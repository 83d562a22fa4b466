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

#include "docret/mining/negatives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_set>

#include "docret/core/error.hpp"

namespace docret::mining {
namespace {

// Partial Fisher-Yates: the first `k` positions of the returned vector are
// a uniform sample without replacement from [0, n).
std::vector<std::size_t> sample_positions(std::size_t n, std::size_t k,
                                          std::mt19937_64& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + uniform_index(rng, n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

void MiningConfig::validate() const {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (k > pool_size) {
    fail(ErrorCode::kInvalidArgument, "k must not exceed the pool size");
  }
  if (!(rrf_k > 0.0) || !std::isfinite(rrf_k)) {
    fail(ErrorCode::kInvalidArgument, "rrf_k must be positive");
  }
  for (const int off : page_window) {
    if (off == 0) fail(ErrorCode::kInvalidArgument, "page offset 0 in window");
  }
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "uniform_index over empty range");
  const std::uint64_t range = n;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return static_cast<std::size_t>(x % range);
}

std::vector<DocId> mine_negatives(const DocId& positive, const RankedList& fused,
                                  const MiningConfig& config,
                                  std::mt19937_64& rng,
                                  std::span<const DocId> also_exclude) {
  config.validate();
  std::unordered_set<std::string_view> excluded(also_exclude.begin(),
                                                also_exclude.end());
  excluded.insert(positive);
  std::vector<DocId> pool;
  std::unordered_set<std::string_view> in_pool;
  for (const auto& entry : fused) {
    if (pool.size() == config.pool_size) break;
    if (excluded.contains(entry.doc)) continue;
    if (!in_pool.insert(entry.doc).second) continue;
    pool.push_back(entry.doc);
  }
  if (pool.size() < config.k) {
    fail(ErrorCode::kPoolTooSmall,
         "only " + std::to_string(pool.size()) + " candidates for " +
             std::to_string(config.k) + " negatives");
  }
  std::vector<DocId> out;
  for (const auto pos : sample_positions(pool.size(), config.k, rng)) {
    out.push_back(pool[pos]);
  }
  return out;
}

std::vector<DocId> mine_negatives(const DocId& positive, const RankedList& fused,
                                  const MiningConfig& config) {
  std::mt19937_64 rng(config.seed);
  return mine_negatives(positive, fused, config, rng);
}

std::vector<DocId> page_neighbor_negatives(const PageRef& positive,
                                           const std::vector<PageRef>& pages,
                                           const MiningConfig& config,
                                           std::mt19937_64& rng) {
  config.validate();
  std::map<std::size_t, const PageRef*> by_page;
  for (const auto& p : pages) {
    if (p.source_doc != positive.source_doc) continue;
    if (!by_page.emplace(p.page_no, &p).second) {
      fail(ErrorCode::kDuplicateId, "page " + std::to_string(p.page_no) +
                                        " of '" + p.source_doc +
                                        "' listed twice");
    }
  }
  if (by_page.empty()) {
    fail(ErrorCode::kInvalidArgument,
         "unknown source document '" + positive.source_doc + "'");
  }
  std::vector<int> offsets = config.page_window;
  std::sort(offsets.begin(), offsets.end(), [](int a, int b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a < b;
  });
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

  std::vector<DocId> candidates;
  for (const int off : offsets) {
    const auto target = static_cast<long long>(positive.page_no) + off;
    if (target < 0) continue;
    const auto it = by_page.find(static_cast<std::size_t>(target));
    if (it != by_page.end()) candidates.push_back(it->second->doc);
  }
  if (candidates.empty()) {
    fail(ErrorCode::kNoNeighbors, "no pages of '" + positive.source_doc +
                                      "' near page " +
                                      std::to_string(positive.page_no));
  }
  if (candidates.size() <= config.k) return candidates;
  std::vector<DocId> out;
  for (const auto pos : sample_positions(candidates.size(), config.k, rng)) {
    out.push_back(candidates[pos]);
  }
  return out;
}

}  // namespace docret::mining
