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

#include <span>
#include <vector>

namespace docret {

// Float storage, double accumulation.
double dot(std::span<const float> a, std::span<const float> b) noexcept;
double squared_norm(std::span<const float> a) noexcept;
double l2_norm(std::span<const float> a) noexcept;

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double l2_norm(std::span<const double> a) noexcept;

/// `values / ||values||` rounded to float. Caller guarantees nonzero norm.
std::vector<float> scaled_to_unit(std::span<const float> values, double norm);

}  // namespace docret
