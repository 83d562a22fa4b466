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

#include "docret/scoring/dense_index.hpp"
#include "docret/scoring/multivector_index.hpp"

namespace docret::analysis {

/// 32-bit floats, no index overhead.
struct StorageEntry {
  std::string label;
  std::size_t docs = 0;
  double bytes_per_doc = 0.0;
  std::uint64_t total_bytes = 0;
};

StorageEntry dense_storage(std::string label, std::size_t dim, std::size_t docs);
StorageEntry multivector_storage(std::string label, std::size_t tokens_per_doc,
                                 std::size_t dim, std::size_t docs);
StorageEntry storage_of(std::string label, const scoring::DenseIndex& index);
StorageEntry storage_of(std::string label, const scoring::MultiVectorIndex& index);

/// Dense entries for each truncation dim, labelled "dense-<dim>".
std::vector<StorageEntry> matryoshka_storage(const std::vector<std::size_t>& dims,
                                             std::size_t docs);

/// Table of bytes/doc, KB/doc, totals and the ratio of each entry to the
/// first one.
std::string format_storage_report(const std::vector<StorageEntry>& entries);

/// 10240 -> "10,240".
std::string group_thousands(std::uint64_t v);

}  // namespace docret::analysis
