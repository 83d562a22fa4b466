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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "docret/core/embedding.hpp"

namespace docret::analysis {

struct PointLabel {
  std::string id;
  std::string language;
  std::string role;  // "query" or "document"
};

struct Projection2D {
  std::vector<std::array<double, 2>> points;
  std::vector<PointLabel> labels;
  std::array<double, 2> explained_variance_ratio{};
  std::array<std::vector<double>, 2> components;
  std::vector<double> mean;
};

struct PcaOptions {
  std::size_t exact_max_dim = 512;      // full eigendecomposition up to here
  std::size_t power_iterations = 100;   // subspace iteration above it
  std::size_t oversample = 8;           // extra subspace columns
  std::uint64_t seed = 42;
};

/// Projects mean-centred rows onto the top two principal directions of the
/// sample covariance. Each component is signed so its first nonzero loading
/// is positive. `labels` is empty or has one entry per row.
/// Throws kInvalidArgument (n < 3, d < 2, ragged rows, label count),
/// kDegenerateData when every row is identical.
Projection2D pca_project(std::span<const DenseEmbedding> rows,
                         std::vector<PointLabel> labels,
                         const PcaOptions& options = {});

}  // namespace docret::analysis
