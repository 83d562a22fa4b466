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
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace docret::merge {

struct Tensor {
  std::vector<std::size_t> shape;
  std::vector<float> data;  // row-major

  std::size_t numel() const noexcept;
  friend bool operator==(const Tensor&, const Tensor&) = default;
};

using CheckpointTensors = std::map<std::string, Tensor>;

/// Throws kInvalidArgument for an empty name, a non-positive dimension or
/// data whose length differs from the shape product.
void validate(const CheckpointTensors& ckpt);

/// Container bytes: magic "M3DRTNSR", u64 LE header length, a JSON header
/// {name: {"dtype": "f32", "shape", "offset", "length"}} with offsets
/// relative to the data region, then the data region. Tensors are laid out
/// in name order.
std::string serialize_checkpoint(const CheckpointTensors& ckpt);

/// Throws kBadMagic, kCorruptHeader (unparseable header, wrong dtype,
/// length/shape disagreement, overlapping ranges), kTruncatedData.
CheckpointTensors parse_checkpoint(std::string_view bytes,
                                   std::string_view source = "<memory>");

CheckpointTensors load_checkpoint(const std::filesystem::path& path);
void save_checkpoint(const CheckpointTensors& ckpt,
                     const std::filesystem::path& path);

}  // namespace docret::merge
