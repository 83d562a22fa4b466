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

#include <string>
#include <string_view>
#include <vector>

namespace docret::mining {

/// Script-agnostic word segmentation for lexical ranking.
///
/// Words are maximal runs of letter/number/mark code points, split at
/// whitespace, punctuation and symbols. Han ideographs and kana have no
/// spaces to split on, so each of those code points is its own token.
/// Latin, Greek, Cyrillic and Armenian letters are lowercased; no
/// stemming or stop-word removal.
std::vector<std::string> tokenize(std::string_view text);

}  // namespace docret::mining
