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

#include "docret/merge/merge.hpp"

#include <algorithm>
#include <cmath>

#include "docret/core/error.hpp"
#include "docret/core/parallel.hpp"

namespace docret::merge {
namespace {

constexpr double kAlphaGrid = 1073741824.0;  // 2^30

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    fail(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  }
}

void check_schema(const CheckpointTensors& a, const CheckpointTensors& b) {
  validate(a);
  validate(b);
  std::vector<std::string> diffs;
  for (const auto& [name, t] : a) {
    const auto it = b.find(name);
    if (it == b.end()) {
      diffs.push_back(name + " (only in A)");
    } else if (it->second.shape != t.shape) {
      diffs.push_back(name + " (shape differs)");
    }
  }
  for (const auto& [name, t] : b) {
    if (!a.contains(name)) diffs.push_back(name + " (only in B)");
  }
  if (!diffs.empty()) {
    std::string msg = "checkpoint schemas differ:";
    for (const auto& d : diffs) msg += " " + d;
    fail(ErrorCode::kSchemaMismatch, msg);
  }
}

template <typename Kernel>
CheckpointTensors merge_each(const CheckpointTensors& a,
                             const CheckpointTensors& b, std::size_t threads,
                             Kernel&& kernel) {
  check_schema(a, b);
  std::vector<const std::string*> names;
  for (const auto& [name, t] : a) names.push_back(&name);
  std::vector<std::vector<float>> merged(names.size());
  parallel_for(names.size(), threads, [&](std::size_t i) {
    merged[i] = kernel(*names[i], a.at(*names[i]).data, b.at(*names[i]).data);
  });
  CheckpointTensors out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    out[*names[i]] = Tensor{a.at(*names[i]).shape, std::move(merged[i])};
  }
  return out;
}

double norm(std::span<const float> v) {
  double s = 0.0;
  for (const float x : v) s += double(x) * double(x);
  return std::sqrt(s);
}

}  // namespace

MergeMethod parse_merge_method(std::string_view text) {
  if (text == "linear") return MergeMethod::kLinear;
  if (text == "slerp") return MergeMethod::kSlerp;
  fail(ErrorCode::kInvalidArgument, "unknown merge method '" + std::string(text) + "'");
}

MagnitudeMode parse_magnitude_mode(std::string_view text) {
  if (text == "interpolate") return MagnitudeMode::kInterpolate;
  if (text == "keep-a") return MagnitudeMode::kKeepA;
  fail(ErrorCode::kInvalidArgument, "unknown magnitude mode '" + std::string(text) + "'");
}

void MergeConfig::validate() const {
  check_alpha(alpha);
  if (!(parallel_threshold > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "parallel threshold must be positive");
  }
}

std::vector<float> lerp_values(std::span<const float> a,
                               std::span<const float> b, double alpha) {
  check_alpha(alpha);
  if (a.size() != b.size()) fail(ErrorCode::kDimMismatch, "lerp of unequal lengths");
  if (alpha == 1.0) return {a.begin(), a.end()};
  if (alpha == 0.0) return {b.begin(), b.end()};
  const double wa = std::nearbyint(alpha * kAlphaGrid) / kAlphaGrid;
  const double wb = 1.0 - wa;
  std::vector<float> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = static_cast<float>(wa * double(a[i]) + wb * double(b[i]));
  }
  return out;
}

std::vector<float> slerp_values(std::span<const float> a,
                                std::span<const float> b, double alpha,
                                double parallel_threshold,
                                MagnitudeMode magnitude) {
  check_alpha(alpha);
  if (a.size() != b.size()) fail(ErrorCode::kDimMismatch, "slerp of unequal lengths");
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) fail(ErrorCode::kZeroTensor, "slerp of a zero tensor");
  double c = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    c += (double(a[i]) / na) * (double(b[i]) / nb);
  }
  const double omega = std::acos(std::clamp(c, -1.0, 1.0));
  const double sin_omega = std::sin(omega);
  if (sin_omega < parallel_threshold) return lerp_values(a, b, 1.0 - alpha);

  const double wa = std::sin((1.0 - alpha) * omega) / sin_omega / na;
  const double wb = std::sin(alpha * omega) / sin_omega / nb;
  const double mag = magnitude == MagnitudeMode::kKeepA
                         ? na
                         : (1.0 - alpha) * na + alpha * nb;
  std::vector<float> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = static_cast<float>(mag * (wa * double(a[i]) + wb * double(b[i])));
  }
  return out;
}

CheckpointTensors merge_linear(const CheckpointTensors& a,
                               const CheckpointTensors& b, double alpha,
                               std::size_t threads) {
  check_alpha(alpha);
  return merge_each(a, b, threads, [&](const std::string&, const auto& x, const auto& y) {
    return lerp_values(x, y, alpha);
  });
}

CheckpointTensors merge_slerp(const CheckpointTensors& a,
                              const CheckpointTensors& b, double alpha,
                              double parallel_threshold, MagnitudeMode magnitude,
                              std::size_t threads) {
  check_alpha(alpha);
  if (!(parallel_threshold > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "parallel threshold must be positive");
  }
  return merge_each(a, b, threads,
                    [&](const std::string& name, const auto& x, const auto& y) {
                      try {
                        return slerp_values(x, y, alpha, parallel_threshold, magnitude);
                      } catch (const Error& e) {
                        if (e.code() != ErrorCode::kZeroTensor) throw;
                        fail(ErrorCode::kZeroTensor, "tensor '" + name + "' is all zero");
                      }
                    });
}

CheckpointTensors merge(const CheckpointTensors& a, const CheckpointTensors& b,
                        const MergeConfig& config) {
  config.validate();
  if (config.method == MergeMethod::kLinear) {
    return merge_linear(a, b, config.alpha, config.threads);
  }
  return merge_slerp(a, b, config.alpha, config.parallel_threshold,
                     config.magnitude, config.threads);
}

}  // namespace docret::merge
