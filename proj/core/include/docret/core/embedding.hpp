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
#include <span>
#include <string>
#include <vector>

namespace docret {

using DocId = std::string;
using QueryId = std::string;

/// One vector per query or document. Values are stored as 32-bit floats;
/// all reductions over them run in double.
class DenseEmbedding {
 public:
  /// Throws kDimError when `values` is empty.
  explicit DenseEmbedding(std::vector<float> values);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const float> values() const noexcept { return values_; }
  float operator[](std::size_t i) const { return values_[i]; }

  double norm() const noexcept;

  friend bool operator==(const DenseEmbedding&, const DenseEmbedding&) = default;

 private:
  std::vector<float> values_;
};

/// Token-level embedding matrix, row-major `n_tokens x dim`.
class MultiVectorEmbedding {
 public:
  MultiVectorEmbedding(std::size_t n_tokens, std::size_t dim,
                       std::vector<float> data);

  static MultiVectorEmbedding from_rows(
      const std::vector<std::vector<float>>& rows);

  std::size_t n_tokens() const noexcept { return n_tokens_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const float> row(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const float> data() const noexcept { return data_; }

  friend bool operator==(const MultiVectorEmbedding&,
                         const MultiVectorEmbedding&) = default;

 private:
  std::size_t n_tokens_;
  std::size_t dim_;
  std::vector<float> data_;
};

/// Unit-L2 copy of `v`. Throws kZeroVector for an all-zero input.
DenseEmbedding normalize(const DenseEmbedding& v);

/// First `d` components of `v`, re-normalized. Throws kDimError when
/// d == 0 or d > v.dim(), kZeroVector when the prefix is all zero.
DenseEmbedding truncate_and_normalize(const DenseEmbedding& v, std::size_t d);

/// Every row scaled to unit norm. Throws kZeroVector naming the first
/// all-zero row.
MultiVectorEmbedding normalize_rows(const MultiVectorEmbedding& m);

}  // namespace docret
