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

#include "docret/analysis/pca.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "docret/core/error.hpp"

namespace docret::analysis {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Platform-independent standard normal (Box-Muller over 53-bit uniforms).
double normal(std::mt19937_64& rng) {
  const auto uniform = [&] { return (double((rng() >> 11)) + 1.0) * 0x1p-53; };
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

struct TopTwo {
  std::array<VectorXd, 2> vectors;
  std::array<double, 2> values{};
};

TopTwo exact_top_two(const MatrixXd& centred) {
  const double denom = double(centred.rows() - 1);
  const MatrixXd cov = (centred.transpose() * centred) / denom;
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kDegenerateData, "covariance eigendecomposition failed");
  }
  const auto d = cov.rows();
  TopTwo out;
  for (int c = 0; c < 2; ++c) {
    out.vectors[c] = solver.eigenvectors().col(d - 1 - c);
    out.values[c] = solver.eigenvalues()(d - 1 - c);
  }
  return out;
}

TopTwo subspace_top_two(const MatrixXd& centred, const PcaOptions& options) {
  const auto d = centred.cols();
  const auto p = std::min<Eigen::Index>(d, 2 + Eigen::Index(options.oversample));
  std::mt19937_64 rng(options.seed);
  MatrixXd q(d, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) q(i, j) = normal(rng);
  }
  const auto orthonormalize = [&](const MatrixXd& m) -> MatrixXd {
    Eigen::HouseholderQR<MatrixXd> qr(m);
    return qr.householderQ() * MatrixXd::Identity(d, p);
  };
  q = orthonormalize(q);
  for (std::size_t it = 0; it < options.power_iterations; ++it) {
    q = orthonormalize(centred.transpose() * (centred * q));
  }
  const MatrixXd xq = centred * q;
  const MatrixXd small = (xq.transpose() * xq) / double(centred.rows() - 1);
  Eigen::SelfAdjointEigenSolver<MatrixXd> solver(small);
  TopTwo out;
  for (int c = 0; c < 2; ++c) {
    out.vectors[c] = q * solver.eigenvectors().col(p - 1 - c);
    out.values[c] = solver.eigenvalues()(p - 1 - c);
  }
  return out;
}

void fix_sign(VectorXd& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10 * scale) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

Projection2D pca_project(std::span<const DenseEmbedding> rows,
                         std::vector<PointLabel> labels,
                         const PcaOptions& options) {
  const auto n = rows.size();
  if (n < 3) fail(ErrorCode::kInvalidArgument, "PCA needs at least 3 points");
  const auto d = rows.front().dim();
  if (d < 2) fail(ErrorCode::kInvalidArgument, "PCA needs dimension >= 2");
  if (!labels.empty() && labels.size() != n) {
    fail(ErrorCode::kInvalidArgument, "label count differs from point count");
  }
  bool all_same = true;
  for (const auto& r : rows) {
    if (r.dim() != d) fail(ErrorCode::kInvalidArgument, "PCA rows differ in dimension");
    all_same = all_same && r == rows.front();
  }
  if (all_same) fail(ErrorCode::kDegenerateData, "all points are identical");

  MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) x(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  }
  const VectorXd mean = x.colwise().mean();
  x.rowwise() -= mean.transpose();
  const double total = x.squaredNorm() / double(n - 1);
  if (!(total > 0.0)) fail(ErrorCode::kDegenerateData, "data has zero variance");

  auto top = d <= options.exact_max_dim ? exact_top_two(x)
                                        : subspace_top_two(x, options);
  Projection2D out;
  out.labels = std::move(labels);
  out.mean.assign(mean.data(), mean.data() + mean.size());
  for (int c = 0; c < 2; ++c) {
    fix_sign(top.vectors[c]);
    out.components[c].assign(top.vectors[c].data(),
                             top.vectors[c].data() + top.vectors[c].size());
    out.explained_variance_ratio[c] = std::clamp(top.values[c] / total, 0.0, 1.0);
  }
  const VectorXd px = x * top.vectors[0];
  const VectorXd py = x * top.vectors[1];
  out.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.points[i] = {px(Eigen::Index(i)), py(Eigen::Index(i))};
  }
  return out;
}

}  // namespace docret::analysis
