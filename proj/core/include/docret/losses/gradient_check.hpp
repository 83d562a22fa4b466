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
#include <string>
#include <vector>

namespace docret::losses {

enum class LossKind { kBiEncoder, kBiNegativeCe, kMatryoshka, kLateInteraction };

std::string loss_kind_name(LossKind kind);

struct GradientCheckResult {
  LossKind kind;
  std::size_t trials = 0;
  double max_relative_error = 0.0;
};

/// Central-difference check of the analytic gradients on `trials` random
/// small batches (dim <= 16, B <= 4, K <= 2), all in double.
///
/// Per component the error is |a - n| / max(|a|, |n|, floor). The floor is
/// the larger of 1e-6 x the largest gradient entry in the batch and
/// 100 x eps * max(1, |loss|) / step, the rounding resolution of the
/// difference quotient; entries smaller than that are zero to the check.
GradientCheckResult check_gradients(LossKind kind, std::size_t trials,
                                    std::uint64_t seed, double tau,
                                    double step = 1e-5);

std::vector<GradientCheckResult> check_all_gradients(std::size_t trials,
                                                     std::uint64_t seed,
                                                     double tau,
                                                     double step = 1e-5);

}  // namespace docret::losses
