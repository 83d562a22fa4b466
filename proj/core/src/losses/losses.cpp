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

#include "docret/losses/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "docret/core/error.hpp"
#include "docret/core/vector_math.hpp"

namespace docret::losses {
namespace {

struct Unit {
  Vector dir;
  double norm = 0.0;
};

Unit to_unit(std::span<const double> v) {
  Unit u;
  u.norm = l2_norm(v);
  if (u.norm == 0.0) fail(ErrorCode::kZeroVector, "loss input vector is zero");
  u.dir.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u.dir[i] = v[i] / u.norm;
  return u;
}

std::vector<Unit> to_units(const std::vector<Vector>& vs) {
  std::vector<Unit> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(to_unit(v));
  return out;
}

// grad_a += coef * d cos(a, b) / d a, where cos = a_hat . b_hat = s.
void add_cosine_grad(std::span<double> grad_a, const Unit& a, const Unit& b,
                     double s, double coef) {
  const double scale = coef / a.norm;
  for (std::size_t k = 0; k < grad_a.size(); ++k) {
    grad_a[k] += scale * (b.dir[k] - s * a.dir[k]);
  }
}

void add_cosine_grad(std::span<double> grad_a, std::span<const double> a_dir,
                     double a_norm, std::span<const double> b_dir, double s,
                     double coef) {
  const double scale = coef / a_norm;
  for (std::size_t k = 0; k < grad_a.size(); ++k) {
    grad_a[k] += scale * (b_dir[k] - s * a_dir[k]);
  }
}

struct InfoNce {
  double value = 0.0;
  std::vector<Vector> dscores;  // dL / dS_ij
};

// -1/B sum_i log softmax_j(S_ij / tau) at j = i.
//
// Each row is evaluated as log sum_j exp(x_j) with x_j = (S_ij - S_ii) / tau,
// max-subtracted and finished with log1p, so a saturated row (positive far
// ahead) yields its tiny loss without cancellation.
InfoNce info_nce(const std::vector<Vector>& scores, double tau) {
  const std::size_t b = scores.size();
  InfoNce out;
  out.dscores.assign(b, Vector(b, 0.0));
  const double inv_b = 1.0 / static_cast<double>(b);
  Vector x(b);
  for (std::size_t i = 0; i < b; ++i) {
    std::size_t arg = i;
    for (std::size_t j = 0; j < b; ++j) {
      x[j] = (scores[i][j] - scores[i][i]) / tau;
      if (x[j] > x[arg]) arg = j;
    }
    const double top = x[arg];
    double rest = 0.0;
    for (std::size_t j = 0; j < b; ++j) {
      if (j != arg) rest += std::exp(x[j] - top);
    }
    const double row_loss = top + std::log1p(rest);
    out.value += row_loss * inv_b;
    for (std::size_t j = 0; j < b; ++j) {
      // p_ij - [i == j]; the diagonal uses expm1 since p_ii -> 1 when saturated.
      const double g = i == j ? std::expm1(-row_loss) : std::exp(x[j] - row_loss);
      out.dscores[i][j] = g * inv_b / tau;
    }
  }
  return out;
}

void check_dense_batch(const LossBatch& batch) {
  if (batch.size() == 0) fail(ErrorCode::kDegenerateBatch, "batch is empty");
  if (batch.positives.size() != batch.size()) {
    fail(ErrorCode::kDegenerateBatch, "queries and positives differ in count");
  }
  if (!batch.negatives.empty() && batch.negatives.size() != batch.size()) {
    fail(ErrorCode::kDegenerateBatch, "negatives must have one row per query");
  }
  const std::size_t dim = batch.dim();
  if (dim == 0) fail(ErrorCode::kDimError, "batch vectors have dim 0");
  const auto check = [dim](const Vector& v) {
    if (v.size() != dim) {
      fail(ErrorCode::kDimMismatch, "batch vectors differ in dim");
    }
  };
  for (const auto& v : batch.queries) check(v);
  for (const auto& v : batch.positives) check(v);
  for (const auto& row : batch.negatives) {
    if (row.size() != batch.negatives_per_query()) {
      fail(ErrorCode::kDegenerateBatch, "ragged hard-negative rows");
    }
    for (const auto& v : row) check(v);
  }
}

LossOutput zero_grads(const LossBatch& batch) {
  LossOutput out;
  const Vector zero(batch.dim(), 0.0);
  out.grad_queries.assign(batch.size(), zero);
  out.grad_positives.assign(batch.size(), zero);
  out.grad_negatives.assign(batch.negatives.size(),
                            std::vector<Vector>(batch.negatives_per_query(), zero));
  return out;
}

// Adds `weight` x InfoNCE over queries/positives into `out`.
void add_info_nce(const LossBatch& batch, const std::vector<Unit>& q,
                  const std::vector<Unit>& p, double tau, double weight,
                  LossOutput& out) {
  const std::size_t b = batch.size();
  std::vector<Vector> scores(b, Vector(b));
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) scores[i][j] = dot(q[i].dir, p[j].dir);
  }
  const auto nce = info_nce(scores, tau);
  out.value += weight * nce.value;
  for (std::size_t i = 0; i < b; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      const double g = weight * nce.dscores[i][j];
      add_cosine_grad(out.grad_queries[i], q[i], p[j], scores[i][j], g);
      add_cosine_grad(out.grad_positives[j], p[j], q[i], scores[i][j], g);
    }
  }
}

}  // namespace

double softplus(double x) noexcept {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

void LossConfig::validate() const {
  if (!(tau > 0.0)) fail(ErrorCode::kInvalidArgument, "tau must be > 0");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "lambda must lie in [0, 1]");
  }
  if (matryoshka_dims.empty() ||
      matryoshka_dims.size() != matryoshka_weights.size()) {
    fail(ErrorCode::kInvalidArgument,
         "matryoshka dims and weights must be non-empty and equal in length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < matryoshka_dims.size(); ++i) {
    if (matryoshka_dims[i] == 0 ||
        (i > 0 && matryoshka_dims[i] <= matryoshka_dims[i - 1])) {
      fail(ErrorCode::kInvalidArgument,
           "matryoshka dims must be positive and strictly ascending");
    }
    if (!(matryoshka_weights[i] > 0.0)) {
      fail(ErrorCode::kInvalidArgument, "matryoshka weights must be positive");
    }
    sum += matryoshka_weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorCode::kInvalidArgument, "matryoshka weights must sum to 1");
  }
}

LossBatch LossBatch::from_embeddings(
    std::span<const DenseEmbedding> queries,
    std::span<const DenseEmbedding> positives,
    const std::vector<std::vector<DenseEmbedding>>& negatives) {
  const auto widen = [](const DenseEmbedding& e) {
    return Vector(e.values().begin(), e.values().end());
  };
  LossBatch batch;
  for (const auto& q : queries) batch.queries.push_back(widen(q));
  for (const auto& p : positives) batch.positives.push_back(widen(p));
  for (const auto& row : negatives) {
    auto& out = batch.negatives.emplace_back();
    for (const auto& n : row) out.push_back(widen(n));
  }
  return batch;
}

LossOutput bi_encoder_loss(const LossBatch& batch, const LossConfig& config) {
  config.validate();
  check_dense_batch(batch);
  auto out = zero_grads(batch);
  add_info_nce(batch, to_units(batch.queries), to_units(batch.positives),
               config.tau, 1.0, out);
  return out;
}

LossOutput bi_negative_ce_loss(const LossBatch& batch,
                               const LossConfig& config) {
  config.validate();
  check_dense_batch(batch);
  const std::size_t b = batch.size();
  const std::size_t k = batch.negatives_per_query();
  if (k == 0) {
    fail(ErrorCode::kMissingNegatives, "hybrid loss needs K >= 1 hard negatives");
  }
  const auto q = to_units(batch.queries);
  const auto p = to_units(batch.positives);
  auto out = zero_grads(batch);

  const double pair_weight = 1.0 - config.lambda;
  const double inv_bk = 1.0 / static_cast<double>(b * k);
  double pairwise = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    const double s_pos = dot(q[i].dir, p[i].dir);
    for (std::size_t n = 0; n < k; ++n) {
      const auto neg = to_unit(batch.negatives[i][n]);
      const double s_neg = dot(q[i].dir, neg.dir);
      const double x = (s_neg - s_pos) / config.tau;
      pairwise += softplus(x) * inv_bk;
      // d softplus(x) / dx = sigmoid(x)
      const double sig = 1.0 / (1.0 + std::exp(-x));
      const double g = pair_weight * sig * inv_bk / config.tau;
      add_cosine_grad(out.grad_queries[i], q[i], neg, s_neg, g);
      add_cosine_grad(out.grad_negatives[i][n], neg, q[i], s_neg, g);
      add_cosine_grad(out.grad_queries[i], q[i], p[i], s_pos, -g);
      add_cosine_grad(out.grad_positives[i], p[i], q[i], s_pos, -g);
    }
  }
  out.value = pair_weight * pairwise;
  add_info_nce(batch, q, p, config.tau, config.lambda, out);
  return out;
}

LossOutput matryoshka_wrap(const DenseLoss& base, const LossBatch& batch,
                           const LossConfig& config) {
  config.validate();
  check_dense_batch(batch);
  const std::size_t full = batch.dim();
  auto out = zero_grads(batch);

  const auto prefix = [](const Vector& v, std::size_t d) {
    Vector p(v.begin(), v.begin() + static_cast<long>(d));
    if (l2_norm(p) == 0.0) {
      fail(ErrorCode::kZeroVector,
           "embedding prefix of length " + std::to_string(d) + " is zero");
    }
    return p;
  };
  const auto accumulate = [](Vector& into, const Vector& g, double w) {
    for (std::size_t k = 0; k < g.size(); ++k) into[k] += w * g[k];
  };

  for (std::size_t gi = 0; gi < config.matryoshka_dims.size(); ++gi) {
    const std::size_t d = config.matryoshka_dims[gi];
    const double w = config.matryoshka_weights[gi];
    if (d > full) {
      fail(ErrorCode::kDimError, "matryoshka dim " + std::to_string(d) +
                                     " exceeds embedding dim " +
                                     std::to_string(full));
    }
    LossBatch cut;
    for (const auto& v : batch.queries) cut.queries.push_back(prefix(v, d));
    for (const auto& v : batch.positives) cut.positives.push_back(prefix(v, d));
    for (const auto& row : batch.negatives) {
      auto& r = cut.negatives.emplace_back();
      for (const auto& v : row) r.push_back(prefix(v, d));
    }
    const auto part = base(cut, config);
    out.value += w * part.value;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      accumulate(out.grad_queries[i], part.grad_queries[i], w);
      accumulate(out.grad_positives[i], part.grad_positives[i], w);
      for (std::size_t n = 0; n < batch.negatives_per_query(); ++n) {
        accumulate(out.grad_negatives[i][n], part.grad_negatives[i][n], w);
      }
    }
  }
  return out;
}

TokenMatrix TokenMatrix::from(const MultiVectorEmbedding& m) {
  TokenMatrix t(m.n_tokens(), m.dim());
  const auto src = m.data();
  std::copy(src.begin(), src.end(), t.data.begin());
  return t;
}

LateInteractionOutput late_interaction_loss(const LateInteractionBatch& batch,
                                            const LossConfig& config,
                                            bool normalized) {
  config.validate();
  const std::size_t b = batch.size();
  if (b == 0) fail(ErrorCode::kDegenerateBatch, "batch is empty");
  if (batch.docs.size() != b) {
    fail(ErrorCode::kDegenerateBatch, "queries and docs differ in count");
  }
  const std::size_t dim = batch.queries.front().cols;
  const auto check = [dim](const TokenMatrix& m) {
    if (m.rows == 0) fail(ErrorCode::kDegenerateBatch, "token matrix has no rows");
    if (m.cols != dim || m.data.size() != m.rows * m.cols) {
      fail(ErrorCode::kDimMismatch, "token matrices differ in dim");
    }
  };
  for (const auto& m : batch.queries) check(m);
  for (const auto& m : batch.docs) check(m);

  struct UnitRows {
    TokenMatrix dir;
    std::vector<double> norms;
  };
  const auto unit_rows = [](const TokenMatrix& m) {
    UnitRows u{TokenMatrix(m.rows, m.cols), std::vector<double>(m.rows)};
    for (std::size_t r = 0; r < m.rows; ++r) {
      u.norms[r] = l2_norm(m.row(r));
      if (u.norms[r] == 0.0) fail(ErrorCode::kZeroVector, "token row is zero");
      for (std::size_t c = 0; c < m.cols; ++c) {
        u.dir.row(r)[c] = m.row(r)[c] / u.norms[r];
      }
    }
    return u;
  };
  std::vector<UnitRows> q, d;
  for (const auto& m : batch.queries) q.push_back(unit_rows(m));
  for (const auto& m : batch.docs) d.push_back(unit_rows(m));

  // argmax[i][j][t]: doc token matched by query token t of q_i against d_j.
  std::vector<std::vector<std::vector<std::size_t>>> argmax(
      b, std::vector<std::vector<std::size_t>>(b));
  std::vector<std::vector<std::vector<double>>> best(
      b, std::vector<std::vector<double>>(b));
  std::vector<Vector> scores(b, Vector(b, 0.0));
  for (std::size_t i = 0; i < b; ++i) {
    const double scale =
        normalized ? 1.0 / static_cast<double>(q[i].dir.rows) : 1.0;
    for (std::size_t j = 0; j < b; ++j) {
      auto& am = argmax[i][j];
      auto& bv = best[i][j];
      am.resize(q[i].dir.rows);
      bv.resize(q[i].dir.rows);
      double total = 0.0;
      for (std::size_t t = 0; t < q[i].dir.rows; ++t) {
        std::size_t arg = 0;
        double top = dot(q[i].dir.row(t), d[j].dir.row(0));
        for (std::size_t u = 1; u < d[j].dir.rows; ++u) {
          const double c = dot(q[i].dir.row(t), d[j].dir.row(u));
          if (c > top) {
            top = c;
            arg = u;
          }
        }
        am[t] = arg;
        bv[t] = top;
        total += top;
      }
      scores[i][j] = total * scale;
    }
  }

  const auto nce = info_nce(scores, config.tau);
  LateInteractionOutput out;
  out.value = nce.value;
  for (const auto& m : batch.queries) out.grad_queries.emplace_back(m.rows, m.cols);
  for (const auto& m : batch.docs) out.grad_docs.emplace_back(m.rows, m.cols);
  for (std::size_t i = 0; i < b; ++i) {
    const double scale =
        normalized ? 1.0 / static_cast<double>(q[i].dir.rows) : 1.0;
    for (std::size_t j = 0; j < b; ++j) {
      const double g = nce.dscores[i][j] * scale;
      for (std::size_t t = 0; t < q[i].dir.rows; ++t) {
        const std::size_t u = argmax[i][j][t];
        const double c = best[i][j][t];
        add_cosine_grad(out.grad_queries[i].row(t), q[i].dir.row(t),
                        q[i].norms[t], d[j].dir.row(u), c, g);
        add_cosine_grad(out.grad_docs[j].row(u), d[j].dir.row(u),
                        d[j].norms[u], q[i].dir.row(t), c, g);
      }
    }
  }
  return out;
}

}  // namespace docret::losses
