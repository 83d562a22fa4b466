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

#include "docret/analysis/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "docret/core/error.hpp"
#include "docret/core/vector_math.hpp"

namespace docret::analysis {

GridShape square_grid(std::size_t n_tokens) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(n_tokens))));
  if (n_tokens == 0 || side * side != n_tokens) {
    fail(ErrorCode::kGridMismatch,
         std::to_string(n_tokens) + " tokens do not form a square grid");
  }
  return {side, side};
}

std::vector<HeatmapGrid> maxsim_heatmap(const MultiVectorEmbedding& q,
                                        const MultiVectorEmbedding& d,
                                        GridShape grid) {
  if (grid.rows * grid.cols != d.n_tokens() || grid.rows == 0) {
    fail(ErrorCode::kGridMismatch,
         std::to_string(grid.rows) + "x" + std::to_string(grid.cols) +
             " grid for " + std::to_string(d.n_tokens()) + " doc tokens");
  }
  if (q.dim() != d.dim()) fail(ErrorCode::kDimMismatch, "heatmap of unequal dims");
  std::vector<double> dn(d.n_tokens());
  for (std::size_t j = 0; j < d.n_tokens(); ++j) {
    dn[j] = l2_norm(d.row(j));
    if (dn[j] == 0.0) fail(ErrorCode::kZeroVector, "zero doc token row");
  }
  std::vector<HeatmapGrid> grids;
  for (std::size_t i = 0; i < q.n_tokens(); ++i) {
    const double qn = l2_norm(q.row(i));
    if (qn == 0.0) fail(ErrorCode::kZeroVector, "zero query token row");
    HeatmapGrid g{i, grid, std::vector<double>(d.n_tokens()), 0.0, 0, 0};
    std::size_t best = 0;
    for (std::size_t j = 0; j < d.n_tokens(); ++j) {
      g.values[j] = std::clamp(dot(q.row(i), d.row(j)) / (qn * dn[j]), -1.0, 1.0);
      if (g.values[j] > g.values[best]) best = j;
    }
    g.token_max = g.values[best];
    g.argmax_row = best / grid.cols;
    g.argmax_col = best % grid.cols;
    grids.push_back(std::move(g));
  }
  return grids;
}

}  // namespace docret::analysis
