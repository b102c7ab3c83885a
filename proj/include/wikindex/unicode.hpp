// Copyright 2026 The wikindex Authors.
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

#ifndef WIKINDEX_UNICODE_HPP
#define WIKINDEX_UNICODE_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace wikindex::unicode {

/// One decoded codepoint. Malformed bytes decode as a single-byte codepoint
/// with `valid == false` so that text processing stays total.
struct Decoded {
  char32_t cp;
  unsigned length;  // bytes consumed, >= 1
  bool valid;
};

Decoded decode(std::string_view text, std::size_t byte_pos);
void encode(char32_t cp, std::string& out);

bool is_letter(char32_t cp);
bool is_ascii_digit(char32_t cp);
bool is_whitespace(char32_t cp);

char32_t to_lower(char32_t cp);

/// Lowercases and applies a small compatibility fold (fullwidth forms,
/// Latin ligatures, curly apostrophe). Covers the forms that occur in wiki
/// text for the supported languages; it is not a full NFKC implementation.
std::string fold_for_lemma(std::string_view token);

}  // namespace wikindex::unicode

#endif  // WIKINDEX_UNICODE_HPP
