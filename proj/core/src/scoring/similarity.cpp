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

#include "docret/scoring/similarity.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "docret/core/error.hpp"
#include "docret/core/vector_math.hpp"

namespace docret::scoring {
namespace {

std::vector<double> row_norms(const MultiVectorEmbedding& m) {
  std::vector<double> norms(m.n_tokens());
  for (std::size_t i = 0; i < m.n_tokens(); ++i) {
    norms[i] = l2_norm(m.row(i));
    if (norms[i] == 0.0) {
      fail(ErrorCode::kZeroVector, "token row " + std::to_string(i) + " is zero");
    }
  }
  return norms;
}

}  // namespace

double cosine(const DenseEmbedding& q, const DenseEmbedding& d) {
  if (q.dim() != d.dim()) {
    fail(ErrorCode::kDimMismatch, "cosine of dims " + std::to_string(q.dim()) +
                                      " and " + std::to_string(d.dim()));
  }
  const double nq = q.norm();
  const double nd = d.norm();
  if (nq == 0.0 || nd == 0.0) fail(ErrorCode::kZeroVector, "cosine of zero vector");
  return std::clamp(dot(q.values(), d.values()) / (nq * nd), -1.0, 1.0);
}

double maxsim(const MultiVectorEmbedding& q, const MultiVectorEmbedding& d) {
  if (q.dim() != d.dim()) {
    fail(ErrorCode::kDimMismatch, "maxsim of dims " + std::to_string(q.dim()) +
                                      " and " + std::to_string(d.dim()));
  }
  const auto qn = row_norms(q);
  const auto dn = row_norms(d);
  double total = 0.0;
  for (std::size_t i = 0; i < q.n_tokens(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d.n_tokens(); ++j) {
      best = std::max(best, dot(q.row(i), d.row(j)) / (qn[i] * dn[j]));
    }
    total += std::clamp(best, -1.0, 1.0);
  }
  return total;
}

double maxsim_normalized(const MultiVectorEmbedding& q,
                         const MultiVectorEmbedding& d) {
  return maxsim(q, d) / static_cast<double>(q.n_tokens());
}

}  // namespace docret::scoring
