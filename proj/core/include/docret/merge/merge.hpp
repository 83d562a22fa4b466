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
#include <string_view>
#include <vector>

#include "docret/merge/checkpoint.hpp"

namespace docret::merge {

enum class MergeMethod { kLinear, kSlerp };
enum class MagnitudeMode { kInterpolate, kKeepA };

MergeMethod parse_merge_method(std::string_view text);
MagnitudeMode parse_magnitude_mode(std::string_view text);

struct MergeConfig {
  MergeMethod method = MergeMethod::kSlerp;
  double alpha = 0.5;
  double parallel_threshold = 1e-7;
  MagnitudeMode magnitude = MagnitudeMode::kInterpolate;
  std::size_t threads = 1;

  /// Throws kInvalidArgument: alpha outside [0, 1], threshold <= 0.
  void validate() const;
};

/// Elementwise alpha * a + (1 - alpha) * b per tensor, so alpha = 1 is a.
/// alpha is snapped to a multiple of 2^-30 so that both weights are exact
/// and merge_linear(a, b, t) == merge_linear(b, a, 1 - t) bit for bit.
/// Throws kSchemaMismatch naming every differing tensor.
CheckpointTensors merge_linear(const CheckpointTensors& a,
                               const CheckpointTensors& b, double alpha,
                               std::size_t threads = 1);

/// Per flattened tensor: geodesic between the unit directions with
/// alpha = 0 at a and alpha = 1 at b, magnitude interpolated linearly (or
/// kept from a). When sin(angle) < parallel_threshold the tensor is
/// interpolated linearly with weight 1 - alpha on a. Throws kSchemaMismatch,
/// kZeroTensor.
CheckpointTensors merge_slerp(const CheckpointTensors& a,
                              const CheckpointTensors& b, double alpha,
                              double parallel_threshold = 1e-7,
                              MagnitudeMode magnitude = MagnitudeMode::kInterpolate,
                              std::size_t threads = 1);

CheckpointTensors merge(const CheckpointTensors& a, const CheckpointTensors& b,
                        const MergeConfig& config);

/// Single-vector kernels behind the checkpoint merges; double internally.
std::vector<float> lerp_values(std::span<const float> a,
                               std::span<const float> b, double alpha);
std::vector<float> slerp_values(std::span<const float> a,
                                std::span<const float> b, double alpha,
                                double parallel_threshold,
                                MagnitudeMode magnitude);

}  // namespace docret::merge
