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

#include "docret/scoring/hnsw.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <random>
#include <string>
#include <utility>

#include "docret/core/binary_io.hpp"
#include "docret/core/error.hpp"

namespace docret::scoring {
namespace {

// Graph-internal distance. Eight independent lanes keep the loop
// vectorizable; final rankings are always re-scored in double elsewhere.
float unit_distance(const float* a, const float* b, std::size_t dim) noexcept {
  float lanes[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  std::size_t i = 0;
  for (; i + 8 <= dim; i += 8) {
    for (std::size_t l = 0; l < 8; ++l) lanes[l] += a[i + l] * b[i + l];
  }
  float acc = 0.0f;
  for (; i < dim; ++i) acc += a[i] * b[i];
  for (float l : lanes) acc += l;
  return 1.0f - acc;
}

struct Candidate {
  float dist;
  std::uint32_t id;
};

// Total order: distance, then id, so equal distances never make a build
// depend on heap internals.
struct Closer {
  bool operator()(const Candidate& a, const Candidate& b) const noexcept {
    return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
  }
};
struct Farther {
  bool operator()(const Candidate& a, const Candidate& b) const noexcept {
    return Closer{}(b, a);
  }
};

using MinHeap = std::priority_queue<Candidate, std::vector<Candidate>, Farther>;
using MaxHeap = std::priority_queue<Candidate, std::vector<Candidate>, Closer>;

class VisitedSet {
 public:
  explicit VisitedSet(std::size_t n) : marks_(n, 0) {}
  void reset() {
    if (++epoch_ == 0) {
      std::fill(marks_.begin(), marks_.end(), 0);
      epoch_ = 1;
    }
  }
  bool insert(std::uint32_t id) {
    if (marks_[id] == epoch_) return false;
    marks_[id] = epoch_;
    return true;
  }

 private:
  std::vector<std::uint32_t> marks_;
  std::uint32_t epoch_ = 0;
};

}  // namespace

// Read-only traversal over a graph and the rows it indexes.
class HnswWalker {
 public:
  HnswWalker(const HnswGraph& g, std::span<const float> rows, std::size_t dim)
      : g_(g), rows_(rows), dim_(dim) {}

  const float* vec(std::uint32_t id) const { return rows_.data() + id * dim_; }
  float dist(const float* q, std::uint32_t id) const {
    return unit_distance(q, vec(id), dim_);
  }

  std::uint32_t greedy(const float* q, std::uint32_t ep, int level) const {
    float best = dist(q, ep);
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::uint32_t n : g_.links_[ep][static_cast<std::size_t>(level)]) {
        const float d = dist(q, n);
        if (d < best || (d == best && n < ep)) {
          best = d;
          ep = n;
          moved = true;
        }
      }
    }
    return ep;
  }

  // Beam search on one level; returns up to `ef` candidates closest first.
  std::vector<Candidate> search_layer(const float* q, std::uint32_t ep,
                                      std::size_t ef, int level,
                                      VisitedSet& visited) const {
    visited.reset();
    MinHeap frontier;
    MaxHeap best;
    const Candidate start{dist(q, ep), ep};
    visited.insert(ep);
    frontier.push(start);
    best.push(start);
    while (!frontier.empty()) {
      const Candidate c = frontier.top();
      if (Closer{}(best.top(), c) && best.size() >= ef) break;
      frontier.pop();
      for (std::uint32_t n : g_.links_[c.id][static_cast<std::size_t>(level)]) {
        if (!visited.insert(n)) continue;
        const Candidate cand{dist(q, n), n};
        if (best.size() < ef || Closer{}(cand, best.top())) {
          frontier.push(cand);
          best.push(cand);
          if (best.size() > ef) best.pop();
        }
      }
    }
    std::vector<Candidate> out(best.size());
    for (auto i = out.size(); i-- > 0;) {
      out[i] = best.top();
      best.pop();
    }
    return out;
  }

  // Neighbor-diversity heuristic: keep a candidate only if it is closer to
  // the base point than to every neighbor already kept.
  std::vector<std::uint32_t> select(const std::vector<Candidate>& sorted,
                                    std::size_t m) const {
    std::vector<std::uint32_t> kept;
    kept.reserve(m);
    for (const Candidate& c : sorted) {
      if (kept.size() >= m) break;
      bool diverse = true;
      for (std::uint32_t r : kept) {
        if (unit_distance(vec(c.id), vec(r), dim_) < c.dist) {
          diverse = false;
          break;
        }
      }
      if (diverse) kept.push_back(c.id);
    }
    return kept;
  }

  std::size_t max_links(int level) const {
    return level == 0 ? 2 * g_.params_.m : g_.params_.m;
  }

 private:
  const HnswGraph& g_;
  std::span<const float> rows_;
  std::size_t dim_;
};

class HnswBuilder {
 public:
  HnswBuilder(HnswGraph& g, std::span<const float> rows, std::size_t dim)
      : g_(g), walk_(g, rows, dim), visited_(rows.size() / dim) {}

  void shrink(std::uint32_t node, int level) {
    auto& links = g_.links_[node][static_cast<std::size_t>(level)];
    if (links.size() <= walk_.max_links(level)) return;
    std::vector<Candidate> cands;
    cands.reserve(links.size());
    for (std::uint32_t n : links) {
      cands.push_back({walk_.dist(walk_.vec(node), n), n});
    }
    std::sort(cands.begin(), cands.end(), Closer{});
    links = walk_.select(cands, walk_.max_links(level));
  }

  void insert(std::uint32_t id, int level) {
    g_.levels_[id] = level;
    g_.links_[id].assign(static_cast<std::size_t>(level) + 1, {});
    if (g_.max_level_ < 0) {
      g_.entry_point_ = id;
      g_.max_level_ = level;
      return;
    }
    const float* q = walk_.vec(id);
    std::uint32_t ep = g_.entry_point_;
    for (int l = g_.max_level_; l > level; --l) ep = walk_.greedy(q, ep, l);
    for (int l = std::min(level, g_.max_level_); l >= 0; --l) {
      const auto cands =
          walk_.search_layer(q, ep, g_.params_.ef_construction, l, visited_);
      const auto chosen = walk_.select(cands, g_.params_.m);
      auto& own = g_.links_[id][static_cast<std::size_t>(l)];
      own = chosen;
      for (std::uint32_t n : chosen) {
        g_.links_[n][static_cast<std::size_t>(l)].push_back(id);
        shrink(n, l);
      }
      ep = cands.front().id;
    }
    if (level > g_.max_level_) {
      g_.max_level_ = level;
      g_.entry_point_ = id;
    }
  }

 private:
  HnswGraph& g_;
  HnswWalker walk_;
  VisitedSet visited_;
};

HnswGraph HnswGraph::build(std::span<const float> rows, std::size_t dim,
                           const HnswParams& params) {
  if (dim == 0 || rows.size() % dim != 0) {
    fail(ErrorCode::kDimMismatch, "row matrix is not a multiple of dim");
  }
  if (params.m < 2) fail(ErrorCode::kInvalidArgument, "HNSW M must be >= 2");
  if (params.ef_construction < 1 || params.ef_search < 1) {
    fail(ErrorCode::kInvalidArgument, "HNSW ef values must be >= 1");
  }
  const std::size_t n = rows.size() / dim;
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorCode::kInvalidArgument, "too many rows for HNSW");
  }
  HnswGraph g;
  g.params_ = params;
  g.levels_.assign(n, 0);
  g.links_.resize(n);

  std::mt19937_64 rng(params.seed);
  const double level_mult = 1.0 / std::log(static_cast<double>(params.m));
  HnswBuilder builder(g, rows, dim);
  for (std::uint32_t id = 0; id < n; ++id) {
    // u in (0, 1], built from the top 53 bits so it is platform independent.
    const double u = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    const int level = static_cast<int>(std::floor(-std::log(u) * level_mult));
    builder.insert(id, level);
  }
  return g;
}

std::vector<std::uint32_t> HnswGraph::search(std::span<const float> rows,
                                             std::size_t dim,
                                             std::span<const float> query,
                                             std::size_t k,
                                             std::size_t ef) const {
  if (levels_.empty()) return {};
  const HnswWalker walker(*this, rows, dim);
  VisitedSet visited(levels_.size());
  std::uint32_t ep = entry_point_;
  for (int l = max_level_; l > 0; --l) ep = walker.greedy(query.data(), ep, l);
  const auto found =
      walker.search_layer(query.data(), ep, std::max(ef, k), 0, visited);
  std::vector<std::uint32_t> ids;
  ids.reserve(found.size());
  for (const auto& c : found) ids.push_back(c.id);
  return ids;
}

std::size_t HnswGraph::nodes_at_level(int level) const {
  return static_cast<std::size_t>(std::count_if(
      levels_.begin(), levels_.end(), [&](int l) { return l >= level; }));
}

bool HnswGraph::connected_at_level0() const {
  const std::size_t n = levels_.size();
  if (n <= 1) return true;
  std::vector<std::vector<std::uint32_t>> undirected(n);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v : links_[u][0]) {
      undirected[u].push_back(v);
      undirected[v].push_back(u);
    }
  }
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack{entry_point_};
  seen[entry_point_] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (std::uint32_t v : undirected[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

void HnswGraph::write(std::ostream& out) const {
  binary::write_u32(out, static_cast<std::uint32_t>(max_level_ + 1));
  binary::write_u32(out, entry_point_);
  binary::write_u32(out, static_cast<std::uint32_t>(levels_.size()));
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    binary::write_u32(out, static_cast<std::uint32_t>(levels_[i]));
    for (const auto& links : links_[i]) {
      binary::write_u32(out, static_cast<std::uint32_t>(links.size()));
      for (std::uint32_t n : links) binary::write_u32(out, n);
    }
  }
}

HnswGraph HnswGraph::read(std::istream& in, std::size_t expected_nodes,
                          const HnswParams& params) {
  HnswGraph g;
  g.params_ = params;
  const auto level_count = binary::read_u32(in, "hnsw level count");
  g.entry_point_ = binary::read_u32(in, "hnsw entry point");
  const auto n = binary::read_u32(in, "hnsw node count");
  if (n != expected_nodes || level_count == 0 || g.entry_point_ >= n) {
    fail(ErrorCode::kCorruptHeader, "hnsw.bin header disagrees with index");
  }
  g.max_level_ = static_cast<int>(level_count) - 1;
  g.levels_.resize(n);
  g.links_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto level = binary::read_u32(in, "hnsw node level");
    if (level >= level_count) {
      fail(ErrorCode::kCorruptHeader, "hnsw node level out of range");
    }
    g.levels_[i] = static_cast<int>(level);
    g.links_[i].resize(level + 1);
    for (auto& links : g.links_[i]) {
      const auto count = binary::read_u32(in, "hnsw link count");
      if (count > n) fail(ErrorCode::kCorruptHeader, "hnsw link count too large");
      links.resize(count);
      for (auto& v : links) {
        v = binary::read_u32(in, "hnsw link");
        if (v >= n) fail(ErrorCode::kCorruptHeader, "hnsw link out of range");
      }
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < g.links_[i].size(); ++l) {
      for (std::uint32_t v : g.links_[i][l]) {
        if (g.levels_[v] < static_cast<int>(l)) {
          fail(ErrorCode::kCorruptHeader, "hnsw link to node absent at level");
        }
      }
    }
  }
  if (g.levels_[g.entry_point_] != g.max_level_) {
    fail(ErrorCode::kCorruptHeader, "hnsw entry point is not on the top level");
  }
  return g;
}

}  // namespace docret::scoring
