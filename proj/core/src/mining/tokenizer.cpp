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

#include "docret/mining/tokenizer.hpp"

#include "docret/core/utf8.hpp"

namespace docret::mining {
namespace {

bool in(char32_t c, char32_t lo, char32_t hi) { return c >= lo && c <= hi; }

bool is_separator(char32_t c) {
  if (c < 0x80) {
    return !((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
             (c >= 'A' && c <= 'Z'));
  }
  if (in(c, 0x80, 0xBF)) return c != 0xAA && c != 0xB5 && c != 0xBA;
  if (c == 0xD7 || c == 0xF7) return true;
  if (c == 0x200C || c == 0x200D) return false;  // joiners are word-internal
  if (in(c, 0x2000, 0x2BFF)) return true;
  if (c == 0x060C || c == 0x061B || c == 0x061F || in(c, 0x066A, 0x066D)) {
    return true;
  }
  if (c == 0x0964 || c == 0x0965 || c == 0x1680) return true;
  if (in(c, 0x3000, 0x303F)) return true;
  if (in(c, 0xFE30, 0xFE6F)) return true;
  if (in(c, 0xFF00, 0xFF0F) || in(c, 0xFF1A, 0xFF20) || in(c, 0xFF3B, 0xFF40) ||
      in(c, 0xFF5B, 0xFF65)) {
    return true;
  }
  if (c == 0xFEFF || c == 0xFFFD) return true;
  if (in(c, 0x1F000, 0x1FAFF)) return true;
  return false;
}

bool is_standalone(char32_t c) {
  return in(c, 0x3040, 0x30FF) || in(c, 0x3400, 0x4DBF) ||
         in(c, 0x4E00, 0x9FFF) || in(c, 0xF900, 0xFAFF) ||
         in(c, 0x20000, 0x2FA1F);
}

char32_t lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c < 0xC0) return c;
  if (in(c, 0xC0, 0xDE) && c != 0xD7) return c + 0x20;
  if (in(c, 0x100, 0x137) || in(c, 0x14A, 0x177)) return c | 1;
  if (in(c, 0x139, 0x148) || in(c, 0x179, 0x17E)) return (c & 1) ? c + 1 : c;
  if (c == 0x178) return 0xFF;
  if (in(c, 0x391, 0x3A9) && c != 0x3A2) return c + 0x20;
  if (in(c, 0x410, 0x42F)) return c + 0x20;
  if (in(c, 0x400, 0x40F)) return c + 0x50;
  if (in(c, 0x531, 0x556)) return c + 0x30;
  return c;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string word;
  const auto flush = [&] {
    if (!word.empty()) tokens.push_back(std::move(word));
    word.clear();
  };
  for (const char32_t c : utf8::decode(text)) {
    if (is_separator(c)) {
      flush();
    } else if (is_standalone(c)) {
      flush();
      utf8::append(word, c);
      flush();
    } else {
      utf8::append(word, lower(c));
    }
  }
  flush();
  return tokens;
}

}  // namespace docret::mining
