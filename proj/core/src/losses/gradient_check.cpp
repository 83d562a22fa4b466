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

#include "docret/losses/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "docret/core/error.hpp"
#include "docret/losses/losses.hpp"

namespace docret::losses {
namespace {

// Random point on the unit sphere, the losses' operating domain.
Vector random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  double sq = 0.0;
  do {
    sq = 0.0;
    for (auto& x : v) {
      x = normal(rng);
      sq += x * x;
    }
  } while (sq == 0.0);
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& x : v) x *= inv;
  return v;
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Worst per-component relative error between two flattened gradients.
// Components below the floor are compared on an absolute scale: the floor
// is the larger of 1e-6 x the gradient's largest entry and 100 x the
// rounding resolution of a central difference, eps * max(1, |loss|) / step.
double compare(const std::vector<double>& analytic,
               const std::vector<double>& numeric, double loss, double step) {
  double scale = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    scale = std::max({scale, std::abs(analytic[i]), std::abs(numeric[i])});
  }
  const double resolution = std::numeric_limits<double>::epsilon() *
                            std::max(1.0, std::abs(loss)) / step;
  const double floor = std::max({scale * 1e-6, 100.0 * resolution, 1e-300});
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double denom =
        std::max({std::abs(analytic[i]), std::abs(numeric[i]), floor});
    worst = std::max(worst, std::abs(analytic[i] - numeric[i]) / denom);
  }
  return worst;
}

template <typename Params, typename Eval>
std::vector<double> central_differences(std::vector<double*>& params,
                                        Params& owner, Eval&& eval,
                                        double step) {
  std::vector<double> numeric(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = *params[i];
    *params[i] = saved + step;
    const double up = eval(owner);
    *params[i] = saved - step;
    const double down = eval(owner);
    *params[i] = saved;
    numeric[i] = (up - down) / (2.0 * step);
  }
  return numeric;
}

double check_dense(const DenseLoss& loss, LossBatch batch,
                   const LossConfig& config, double step) {
  std::vector<double*> params;
  for (auto& v : batch.queries) for (auto& x : v) params.push_back(&x);
  for (auto& v : batch.positives) for (auto& x : v) params.push_back(&x);
  for (auto& row : batch.negatives) for (auto& v : row) for (auto& x : v) params.push_back(&x);

  const auto out = loss(batch, config);
  std::vector<double> analytic;
  for (const auto& v : out.grad_queries) analytic.insert(analytic.end(), v.begin(), v.end());
  for (const auto& v : out.grad_positives) analytic.insert(analytic.end(), v.begin(), v.end());
  for (const auto& row : out.grad_negatives) {
    for (const auto& v : row) analytic.insert(analytic.end(), v.begin(), v.end());
  }
  const auto numeric = central_differences(
      params, batch,
      [&](const LossBatch& b) { return loss(b, config).value; }, step);
  return compare(analytic, numeric, out.value, step);
}

double check_late(LateInteractionBatch batch, const LossConfig& config,
                  bool normalized, double step) {
  std::vector<double*> params;
  for (auto& m : batch.queries) for (auto& x : m.data) params.push_back(&x);
  for (auto& m : batch.docs) for (auto& x : m.data) params.push_back(&x);
  const auto out = late_interaction_loss(batch, config, normalized);
  std::vector<double> analytic;
  for (const auto& m : out.grad_queries) analytic.insert(analytic.end(), m.data.begin(), m.data.end());
  for (const auto& m : out.grad_docs) analytic.insert(analytic.end(), m.data.begin(), m.data.end());
  const auto numeric = central_differences(
      params, batch,
      [&](const LateInteractionBatch& b) {
        return late_interaction_loss(b, config, normalized).value;
      },
      step);
  return compare(analytic, numeric, out.value, step);
}

LossBatch random_batch(std::mt19937_64& rng, std::size_t dim, std::size_t b,
                       std::size_t k) {
  LossBatch batch;
  for (std::size_t i = 0; i < b; ++i) {
    batch.queries.push_back(random_vector(rng, dim));
    batch.positives.push_back(random_vector(rng, dim));
    auto& row = batch.negatives.emplace_back();
    for (std::size_t n = 0; n < k; ++n) row.push_back(random_vector(rng, dim));
  }
  return batch;
}

TokenMatrix random_tokens(std::mt19937_64& rng, std::size_t rows,
                          std::size_t dim) {
  TokenMatrix m(rows, dim);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto v = random_vector(rng, dim);
    std::copy(v.begin(), v.end(), m.row(r).begin());
  }
  return m;
}

}  // namespace

std::string loss_kind_name(LossKind kind) {
  switch (kind) {
    case LossKind::kBiEncoder: return "bi_encoder";
    case LossKind::kBiNegativeCe: return "bi_negative_ce";
    case LossKind::kMatryoshka: return "matryoshka";
    case LossKind::kLateInteraction: return "late_interaction";
  }
  return "unknown";
}

GradientCheckResult check_gradients(LossKind kind, std::size_t trials,
                                    std::uint64_t seed, double tau,
                                    double step) {
  std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(kind) + 1) * 0x9e3779b97f4a7c15ULL);
  GradientCheckResult result{kind, trials, 0.0};
  for (std::size_t t = 0; t < trials; ++t) {
    LossConfig config;
    config.tau = tau;
    config.lambda = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    double err = 0.0;
    switch (kind) {
      case LossKind::kBiEncoder: {
        const auto batch = random_batch(rng, pick(rng, 2, 16), pick(rng, 2, 4), 0);
        err = check_dense(bi_encoder_loss, batch, config, step);
        break;
      }
      case LossKind::kBiNegativeCe: {
        const auto batch =
            random_batch(rng, pick(rng, 2, 16), pick(rng, 1, 4), pick(rng, 1, 2));
        err = check_dense(bi_negative_ce_loss, batch, config, step);
        break;
      }
      case LossKind::kMatryoshka: {
        // Smallest granularity is >= 2 dims; a 1-dim prefix has constant
        // cosine and nothing to check.
        const std::size_t dim = 4 * pick(rng, 2, 4);
        config.matryoshka_dims = {dim / 4, dim / 2, dim};
        const auto batch =
            random_batch(rng, dim, pick(rng, 2, 4), pick(rng, 1, 2));
        const DenseLoss base = t % 2 == 0 ? DenseLoss(bi_encoder_loss)
                                          : DenseLoss(bi_negative_ce_loss);
        err = check_dense(
            [&](const LossBatch& b, const LossConfig& c) {
              return matryoshka_wrap(base, b, c);
            },
            batch, config, step);
        break;
      }
      case LossKind::kLateInteraction: {
        const std::size_t dim = pick(rng, 2, 16);
        const std::size_t b = pick(rng, 2, 4);
        LateInteractionBatch batch;
        for (std::size_t i = 0; i < b; ++i) {
          batch.queries.push_back(random_tokens(rng, pick(rng, 1, 4), dim));
          batch.docs.push_back(random_tokens(rng, pick(rng, 1, 5), dim));
        }
        err = check_late(batch, config, t % 2 == 1, step);
        break;
      }
    }
    result.max_relative_error = std::max(result.max_relative_error, err);
  }
  return result;
}

std::vector<GradientCheckResult> check_all_gradients(std::size_t trials,
                                                     std::uint64_t seed,
                                                     double tau, double step) {
  std::vector<GradientCheckResult> out;
  for (auto kind : {LossKind::kBiEncoder, LossKind::kBiNegativeCe,
                    LossKind::kMatryoshka, LossKind::kLateInteraction}) {
    out.push_back(check_gradients(kind, trials, seed, tau, step));
  }
  return out;
}

}  // namespace docret::losses
