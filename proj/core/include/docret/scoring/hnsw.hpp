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
#include <iosfwd>
#include <span>
#include <vector>

namespace docret::scoring {

struct HnswParams {
  std::size_t m = 16;                 // max links per node above level 0
  std::size_t ef_construction = 200;  // beam width while inserting
  std::size_t ef_search = 100;        // default beam width for queries
  std::uint64_t seed = 42;            // level-assignment RNG

  friend bool operator==(const HnswParams&, const HnswParams&) = default;
};

/// Hierarchical navigable small-world graph over unit rows, using
/// `1 - dot` as distance. The graph does not own the vectors; every call
/// takes the same row-major matrix it was built from.
///
/// Level 0 allows 2*m links, upper levels m. Levels are drawn as
/// floor(-ln(u) / ln(m)) from a seeded generator in insertion order, so a
/// build is a pure function of (rows, params).
class HnswGraph {
 public:
  static HnswGraph build(std::span<const float> rows, std::size_t dim,
                         const HnswParams& params);

  /// Up to max(ef, k) node ids nearest to `query`, closest first.
  std::vector<std::uint32_t> search(std::span<const float> rows,
                                    std::size_t dim,
                                    std::span<const float> query,
                                    std::size_t k, std::size_t ef) const;

  std::size_t size() const noexcept { return levels_.size(); }
  int max_level() const noexcept { return max_level_; }
  std::uint32_t entry_point() const noexcept { return entry_point_; }
  int level_of(std::uint32_t node) const { return levels_[node]; }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t node,
                                              int level) const {
    return links_[node][static_cast<std::size_t>(level)];
  }
  const HnswParams& params() const noexcept { return params_; }

  /// Number of nodes present at `level`.
  std::size_t nodes_at_level(int level) const;

  /// True when every node is reachable from the entry point over level-0
  /// links treated as undirected.
  bool connected_at_level0() const;

  // Layout (all u32, little-endian): level_count, entry_point, node_count,
  // then per node: level, and for each of its levels a link count followed
  // by the link ids.
  void write(std::ostream& out) const;
  static HnswGraph read(std::istream& in, std::size_t expected_nodes,
                        const HnswParams& params);

 private:
  HnswParams params_;
  std::vector<int> levels_;
  std::vector<std::vector<std::vector<std::uint32_t>>> links_;
  std::uint32_t entry_point_ = 0;
  int max_level_ = -1;

  friend class HnswWalker;
  friend class HnswBuilder;
};

}  // namespace docret::scoring
