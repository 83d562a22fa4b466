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
#include <vector>

#include "docret/core/embedding.hpp"

namespace bench {

inline std::vector<float> gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<float> dist;
  std::vector<float> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

inline docret::DenseEmbedding dense(std::size_t dim, std::mt19937_64& rng) {
  return docret::normalize(docret::DenseEmbedding(gaussian(dim, rng)));
}

inline docret::MultiVectorEmbedding multi(std::size_t tokens, std::size_t dim,
                                          std::mt19937_64& rng) {
  return docret::MultiVectorEmbedding(tokens, dim, gaussian(tokens * dim, rng));
}

}  // namespace bench
