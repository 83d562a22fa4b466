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

#include "docret/core/embedding.hpp"

#include <string>
#include <utility>

#include "docret/core/error.hpp"
#include "docret/core/vector_math.hpp"

namespace docret {

DenseEmbedding::DenseEmbedding(std::vector<float> values)
    : values_(std::move(values)) {
  if (values_.empty()) fail(ErrorCode::kDimError, "embedding has dim 0");
}

double DenseEmbedding::norm() const noexcept { return l2_norm(values_); }

MultiVectorEmbedding::MultiVectorEmbedding(std::size_t n_tokens,
                                           std::size_t dim,
                                           std::vector<float> data)
    : n_tokens_(n_tokens), dim_(dim), data_(std::move(data)) {
  if (n_tokens_ == 0) fail(ErrorCode::kDimError, "multivector has 0 tokens");
  if (dim_ == 0) fail(ErrorCode::kDimError, "multivector has dim 0");
  if (data_.size() != n_tokens_ * dim_) {
    fail(ErrorCode::kDimMismatch,
         "multivector data length " + std::to_string(data_.size()) +
             " != " + std::to_string(n_tokens_) + "x" + std::to_string(dim_));
  }
}

MultiVectorEmbedding MultiVectorEmbedding::from_rows(
    const std::vector<std::vector<float>>& rows) {
  if (rows.empty()) fail(ErrorCode::kDimError, "multivector has 0 tokens");
  const std::size_t dim = rows.front().size();
  std::vector<float> data;
  data.reserve(rows.size() * dim);
  for (const auto& r : rows) {
    if (r.size() != dim) {
      fail(ErrorCode::kDimMismatch, "multivector rows have differing dims");
    }
    data.insert(data.end(), r.begin(), r.end());
  }
  return MultiVectorEmbedding(rows.size(), dim, std::move(data));
}

DenseEmbedding normalize(const DenseEmbedding& v) {
  const double n = v.norm();
  if (n == 0.0) fail(ErrorCode::kZeroVector, "cannot normalize a zero vector");
  return DenseEmbedding(scaled_to_unit(v.values(), n));
}

DenseEmbedding truncate_and_normalize(const DenseEmbedding& v, std::size_t d) {
  if (d == 0 || d > v.dim()) {
    fail(ErrorCode::kDimError, "truncation dim " + std::to_string(d) +
                                   " outside [1, " + std::to_string(v.dim()) +
                                   "]");
  }
  const auto prefix = v.values().first(d);
  const double n = l2_norm(prefix);
  if (n == 0.0) {
    fail(ErrorCode::kZeroVector,
         "prefix of length " + std::to_string(d) + " is all zero");
  }
  return DenseEmbedding(scaled_to_unit(prefix, n));
}

MultiVectorEmbedding normalize_rows(const MultiVectorEmbedding& m) {
  std::vector<float> data;
  data.reserve(m.n_tokens() * m.dim());
  for (std::size_t i = 0; i < m.n_tokens(); ++i) {
    const auto r = m.row(i);
    const double n = l2_norm(r);
    if (n == 0.0) {
      fail(ErrorCode::kZeroVector, "token row " + std::to_string(i) + " is zero");
    }
    const auto unit = scaled_to_unit(r, n);
    data.insert(data.end(), unit.begin(), unit.end());
  }
  return MultiVectorEmbedding(m.n_tokens(), m.dim(), std::move(data));
}

}  // namespace docret
