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

namespace docret::analysis {

struct GridShape {
  std::size_t rows = 0;
  std::size_t cols = 0;
};

/// rows == cols == sqrt(n); throws kGridMismatch when n is not a square.
GridShape square_grid(std::size_t n_tokens);

/// Cosine of one query token against every doc token, laid out row-major
/// on the patch grid.
struct HeatmapGrid {
  std::size_t query_token = 0;
  GridShape shape;
  std::vector<double> values;
  double token_max = 0.0;
  std::size_t argmax_row = 0;
  std::size_t argmax_col = 0;
};

/// One grid per query token. Ties for the maximum go to the lowest token
/// index. Throws kGridMismatch, kDimMismatch, kZeroVector.
std::vector<HeatmapGrid> maxsim_heatmap(const MultiVectorEmbedding& q,
                                        const MultiVectorEmbedding& d,
                                        GridShape grid);

}  // namespace docret::analysis
