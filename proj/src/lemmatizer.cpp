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

#include "wikindex/lemmatizer.hpp"

#include "wikindex/errors.hpp"
#include "wikindex/unicode.hpp"

namespace wikindex {

namespace unc = unicode;

LemmatizerSpec LemmatizerSpec::for_language(std::string_view language) {
  LemmatizerSpec spec;
  spec.language = std::string(language);
  if (language == "en" || language == "simple") {
    spec.kind = LemmatizerKind::kEnglishSuffix;
  } else {
    spec.kind = LemmatizerKind::kNormalizeOnly;
  }
  return spec;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::string surface;
  std::uint64_t start = 0;
  bool has_letter = false;
  bool prev_was_letter = false;

  auto flush = [&](void) {
    if (!surface.empty()) {
      tokens.push_back({std::move(surface), start, has_letter});
      surface.clear();
      has_letter = false;
      prev_was_letter = false;
    }
  };

  std::uint64_t cp_index = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    const unc::Decoded d = unc::decode(text, i);
    const std::size_t next = i + d.length;
    const char32_t cp = d.cp;
    const bool letter = d.valid && unc::is_letter(cp);
    const bool digit = d.valid && unc::is_ascii_digit(cp);
    const bool joiner = d.valid && (cp == '\'' || cp == 0x2019 || cp == '-');

    if (letter || digit) {
      if (surface.empty()) start = cp_index;
      surface.append(text.substr(i, d.length));
      has_letter = has_letter || letter;
      prev_was_letter = letter;
    } else if (joiner && prev_was_letter && !surface.empty()) {
      // An apostrophe or hyphen joins only when flanked by letters.
      const unc::Decoded peek = unc::decode(text, next);
      if (peek.length > 0 && peek.valid && unc::is_letter(peek.cp)) {
        surface.append(text.substr(i, d.length));
        prev_was_letter = false;
      } else {
        flush();
      }
    } else {
      flush();
    }
    i = next;
    ++cp_index;
  }
  flush();
  return tokens;
}

namespace {

bool is_ascii_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool has_vowel(std::string_view w) {
  for (const char c : w) {
    if (is_ascii_vowel(c) || c == 'y') return true;
  }
  return false;
}

bool is_ascii_consonant(char c) {
  return c >= 'a' && c <= 'z' && !is_ascii_vowel(c);
}

bool all_ascii_letters(std::string_view w) {
  for (const char c : w) {
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// consonant-vowel-consonant ending, final consonant not w/x/y; the shape
/// that usually lost a trailing 'e' ("mak", "hop").
bool ends_cvc(std::string_view w) {
  const std::size_t n = w.size();
  if (n < 3) return false;
  const char c2 = w[n - 3], c1 = w[n - 2], c0 = w[n - 1];
  return is_ascii_consonant(c2) && is_ascii_vowel(c1) &&
         is_ascii_consonant(c0) && c0 != 'w' && c0 != 'x' && c0 != 'y';
}

bool ends_double_consonant(std::string_view w) {
  const std::size_t n = w.size();
  if (n < 2 || w[n - 1] != w[n - 2]) return false;
  const char c = w[n - 1];
  return is_ascii_consonant(c) && c != 'l' && c != 's' && c != 'z';
}

std::string strip_plural(const std::string& w) {
  if (!ends_with(w, "s") || ends_with(w, "ss") || ends_with(w, "us") ||
      ends_with(w, "is")) {
    return w;
  }
  if (ends_with(w, "ies") && w.size() >= 3 + 2) {
    return w.substr(0, w.size() - 3) + "y";  // cities -> city
  }
  if (ends_with(w, "es")) {
    const std::string_view stem(w.data(), w.size() - 2);
    if (stem.size() >= 3 &&
        (ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
         ends_with(stem, "ch") || ends_with(stem, "sh"))) {
      return std::string(stem);  // boxes -> box, churches -> church
    }
  }
  if (w.size() - 1 >= 3) return w.substr(0, w.size() - 1);
  return w;
}

/// Shared tail fixups after -ing/-ed removal: undouble ("runn" -> "run") or
/// restore a dropped 'e' ("mak" -> "make"). Returns empty when no acceptable
/// stem exists.
std::string fix_stem(std::string stem) {
  if (!has_vowel(stem)) return {};
  if (ends_double_consonant(stem)) {
    stem.pop_back();
    return stem.size() >= 3 ? stem : std::string{};
  }
  if (stem.size() >= 3 && !ends_cvc(stem)) return stem;
  if (!stem.empty() && is_ascii_consonant(stem.back())) {
    stem.push_back('e');
    if (stem.size() >= 3) return stem;
  }
  return stem.size() >= 3 ? stem : std::string{};
}

std::string strip_ing(const std::string& w) {
  if (!ends_with(w, "ing") || w.size() < 3 + 2) return w;
  std::string stem = fix_stem(w.substr(0, w.size() - 3));
  return stem.empty() ? w : stem;
}

std::string strip_ed(const std::string& w) {
  if (ends_with(w, "eed")) {
    // agreed -> agree, but speed stays.
    const std::string_view prefix(w.data(), w.size() - 3);
    return has_vowel(prefix) ? w.substr(0, w.size() - 1) : w;
  }
  if (ends_with(w, "ied") && w.size() >= 3 + 2) {
    return w.substr(0, w.size() - 3) + "y";  // tried -> try
  }
  if (!ends_with(w, "ed") || w.size() < 2 + 2) return w;
  std::string stem = fix_stem(w.substr(0, w.size() - 2));
  return stem.empty() ? w : stem;
}

std::string english_suffix_strip(const std::string& w) {
  // The rules are ASCII; anything else passes through normalized.
  if (!all_ascii_letters(w)) return w;
  std::string out = strip_plural(w);
  out = strip_ing(out);
  out = strip_ed(out);
  return out;
}

}  // namespace

std::string lemmatize(std::string_view surface, const LemmatizerSpec& spec) {
  switch (spec.kind) {
    case LemmatizerKind::kNormalizeOnly:
      return unc::fold_for_lemma(surface);
    case LemmatizerKind::kEnglishSuffix:
      return english_suffix_strip(unc::fold_for_lemma(surface));
    case LemmatizerKind::kExternal:
      if (!spec.external_fn) {
        throw Error("external lemmatizer selected but no function registered");
      }
      return spec.external_fn(surface);
  }
  return std::string(surface);
}

LemmaFreqList lemma_frequencies(std::string_view text,
                                const LemmatizerSpec& spec) {
  LemmaFreqList list;
  for (const Token& token : tokenize(text)) {
    ++list.total_tokens;
    if (!token.has_letter) continue;
    std::string lemma = lemmatize(token.surface, spec);
    if (lemma.empty()) continue;
    ++list.entries[lemma];
  }
  return list;
}

}  // namespace wikindex
