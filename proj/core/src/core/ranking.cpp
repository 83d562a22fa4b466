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

#include "docret/core/ranking.hpp"

#include <algorithm>

namespace docret {

void sort_ranked(RankedList& list) {
  std::sort(list.begin(), list.end(), ranks_before);
}

RankedList top_k(RankedList list, std::size_t k) {
  if (k < list.size()) {
    std::partial_sort(list.begin(), list.begin() + static_cast<long>(k),
                      list.end(), ranks_before);
    list.resize(k);
  } else {
    sort_ranked(list);
  }
  return list;
}

}  // namespace docret
