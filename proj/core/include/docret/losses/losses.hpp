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
#include <functional>
#include <span>
#include <vector>

#include "docret/core/embedding.hpp"

namespace docret::losses {

using Vector = std::vector<double>;

struct LossConfig {
  double tau = 0.02;
  /// Weight of the InfoNCE term in the hybrid loss; the pairwise term gets
  /// 1 - lambda.
  double lambda = 0.5;
  std::vector<std::size_t> matryoshka_dims{768, 1536, 2560};
  std::vector<double> matryoshka_weights{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  /// Throws kInvalidArgument: tau <= 0, lambda outside [0,1], dims not
  /// strictly ascending or zero, weights non-positive or not summing to 1.
  void validate() const;
};

/// B (query, positive) pairs plus B x K hard negatives. Values are 64-bit so
/// finite-difference checks are meaningful.
struct LossBatch {
  std::vector<Vector> queries;
  std::vector<Vector> positives;
  std::vector<std::vector<Vector>> negatives;  // empty or B rows of K

  std::size_t size() const noexcept { return queries.size(); }
  std::size_t negatives_per_query() const noexcept {
    return negatives.empty() ? 0 : negatives.front().size();
  }
  std::size_t dim() const noexcept {
    return queries.empty() ? 0 : queries.front().size();
  }

  static LossBatch from_embeddings(
      std::span<const DenseEmbedding> queries,
      std::span<const DenseEmbedding> positives,
      const std::vector<std::vector<DenseEmbedding>>& negatives = {});
};

/// Loss value and its gradient with respect to every input vector; the
/// gradient containers mirror the batch layout.
struct LossOutput {
  double value = 0.0;
  std::vector<Vector> grad_queries;
  std::vector<Vector> grad_positives;
  std::vector<std::vector<Vector>> grad_negatives;
};

// All similarities are cosines of the raw inputs, so gradients include the
// normalization Jacobian and are exact for un-normalized vectors too.

/// In-batch InfoNCE over s_ij = cos(q_i, d_j): -1/B sum_i log softmax_j(s_ij/tau)
/// at j = i. Hard negatives are ignored (their gradients are zero).
LossOutput bi_encoder_loss(const LossBatch& batch, const LossConfig& config);

/// (1 - lambda) * mean softplus((s(q, neg) - s(q, pos)) / tau)
///   + lambda * InfoNCE. Negatives only enter the pairwise term.
/// Throws kMissingNegatives when K == 0.
LossOutput bi_negative_ce_loss(const LossBatch& batch, const LossConfig& config);

using DenseLoss = std::function<LossOutput(const LossBatch&, const LossConfig&)>;

/// sum_d w_d * base(batch truncated to d leading dims, re-normalized).
/// Gradients land on the leading d components of the full vectors and
/// accumulate across granularities. Throws kDimError when a granularity
/// exceeds the embedding dim, kZeroVector for an all-zero prefix.
LossOutput matryoshka_wrap(const DenseLoss& base, const LossBatch& batch,
                           const LossConfig& config);

/// Row-major token matrix in double precision.
struct TokenMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  TokenMatrix() = default;
  TokenMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }

  static TokenMatrix from(const MultiVectorEmbedding& m);
};

struct LateInteractionBatch {
  std::vector<TokenMatrix> queries;
  std::vector<TokenMatrix> docs;

  std::size_t size() const noexcept { return queries.size(); }
};

struct LateInteractionOutput {
  double value = 0.0;
  std::vector<TokenMatrix> grad_queries;
  std::vector<TokenMatrix> grad_docs;
};

/// InfoNCE over a MaxSim similarity matrix, optionally dividing each score
/// by the query's token count. When several document tokens tie for a
/// query token's maximum, the gradient goes to the lowest-index one.
LateInteractionOutput late_interaction_loss(const LateInteractionBatch& batch,
                                            const LossConfig& config,
                                            bool normalized);

/// Numerically stable softplus, log(1 + e^x).
double softplus(double x) noexcept;

}  // namespace docret::losses
