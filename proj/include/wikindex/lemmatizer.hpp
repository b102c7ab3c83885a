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

#ifndef WIKINDEX_LEMMATIZER_HPP
#define WIKINDEX_LEMMATIZER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wikindex {

/// One token. `offset` is the codepoint index of the first character.
/// Tokens without a letter (e.g. "42") take part in word counts but are
/// excluded from lemmatization, marked by `has_letter == false`.
struct Token {
  std::string surface;
  std::uint64_t offset = 0;
  bool has_letter = false;
};

/// Per-document lemma counts. `total_tokens` counts every token, including
/// the letterless ones that produce no lemma.
struct LemmaFreqList {
  std::map<std::string, std::uint64_t> entries;
  std::uint64_t total_tokens = 0;
};

enum class LemmatizerKind {
  kNormalizeOnly,   // compatibility fold + lowercase
  kEnglishSuffix,   // normalize, then deterministic suffix stripping
  kExternal,        // user-registered lemma function
};

struct LemmatizerSpec {
  LemmatizerKind kind = LemmatizerKind::kNormalizeOnly;
  std::string language = "und";
  /// Required for kExternal; must be safe for concurrent calls.
  std::function<std::string(std::string_view)> external_fn;

  /// english-suffix for "en"/"simple", normalize-only otherwise.
  static LemmatizerSpec for_language(std::string_view language);
};

/// Splits `text` into tokens: a token is a maximal run of letters and
/// digits, plus apostrophes/hyphens with a letter on both sides.
std::vector<Token> tokenize(std::string_view text);

std::string lemmatize(std::string_view surface, const LemmatizerSpec& spec);
inline std::string lemmatize(const Token& token, const LemmatizerSpec& spec) {
  return lemmatize(token.surface, spec);
}

/// Composition of tokenize and lemmatize over a whole text.
LemmaFreqList lemma_frequencies(std::string_view text,
                                const LemmatizerSpec& spec);

}  // namespace wikindex

#endif  // WIKINDEX_LEMMATIZER_HPP
