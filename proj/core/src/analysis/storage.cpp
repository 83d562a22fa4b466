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

#include "docret/analysis/storage.hpp"

#include <cstdio>

namespace docret::analysis {

StorageEntry dense_storage(std::string label, std::size_t dim, std::size_t docs) {
  const std::uint64_t per_doc = std::uint64_t(dim) * 4;
  return {std::move(label), docs, double(per_doc), per_doc * docs};
}

StorageEntry multivector_storage(std::string label, std::size_t tokens_per_doc,
                                 std::size_t dim, std::size_t docs) {
  const std::uint64_t per_doc = std::uint64_t(tokens_per_doc) * dim * 4;
  return {std::move(label), docs, double(per_doc), per_doc * docs};
}

StorageEntry storage_of(std::string label, const scoring::DenseIndex& index) {
  return dense_storage(std::move(label), index.dim(), index.size());
}

StorageEntry storage_of(std::string label, const scoring::MultiVectorIndex& index) {
  const std::uint64_t total = std::uint64_t(index.total_tokens()) * index.dim() * 4;
  const double per_doc = index.size() == 0 ? 0.0 : double(total) / double(index.size());
  return {std::move(label), index.size(), per_doc, total};
}

std::vector<StorageEntry> matryoshka_storage(const std::vector<std::size_t>& dims,
                                             std::size_t docs) {
  std::vector<StorageEntry> out;
  for (const auto d : dims) out.push_back(dense_storage("dense-" + std::to_string(d), d, docs));
  return out;
}

std::string group_thousands(std::uint64_t v) {
  auto digits = std::to_string(v);
  for (auto pos = static_cast<long>(digits.size()) - 3; pos > 0; pos -= 3) {
    digits.insert(static_cast<std::size_t>(pos), ",");
  }
  return digits;
}

std::string format_storage_report(const std::vector<StorageEntry>& entries) {
  std::string out = "config\tdocs\tbytes/doc\tKB/doc\ttotal bytes\tratio\n";
  char buf[64];
  for (const auto& e : entries) {
    const auto& base = entries.front();
    out += e.label + '\t' + std::to_string(e.docs) + '\t';
    if (e.bytes_per_doc == double(std::uint64_t(e.bytes_per_doc))) {
      out += group_thousands(std::uint64_t(e.bytes_per_doc));
    } else {
      std::snprintf(buf, sizeof(buf), "%.1f", e.bytes_per_doc);
      out += buf;
    }
    std::snprintf(buf, sizeof(buf), "\t%.2f\t", e.bytes_per_doc / 1024.0);
    out += buf;
    out += group_thousands(e.total_bytes);
    std::snprintf(buf, sizeof(buf), "\t%.3fx\n",
                  base.bytes_per_doc > 0.0 ? e.bytes_per_doc / base.bytes_per_doc : 0.0);
    out += buf;
  }
  return out;
}

}  // namespace docret::analysis
