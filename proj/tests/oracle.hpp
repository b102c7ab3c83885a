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

#ifndef WIKINDEX_TEST_ORACLE_HPP
#define WIKINDEX_TEST_ORACLE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wikindex/lemmatizer.hpp"
#include "wikindex/wikitext.hpp"

// Brute-force recount of the index tables straight from document texts.
// Deliberately independent of the builder's spill/merge/cap machinery: plain
// per-document maps, no ordering tricks, no caps.
namespace oracle {

struct TermCounts {
  std::uint64_t doc_freq = 0;
  std::uint64_t corpus_freq = 0;
};

// lemma -> counts over the whole corpus
inline std::map<std::string, TermCounts> term_table(
    const std::vector<wikindex::PlainDoc>& docs,
    const wikindex::LemmatizerSpec& spec) {
  std::map<std::string, TermCounts> table;
  for (const auto& doc : docs) {
    std::map<std::string, std::uint64_t> per_doc;
    for (const auto& token : wikindex::tokenize(doc.text)) {
      if (!token.has_letter) continue;
      const std::string lemma = wikindex::lemmatize(token.surface, spec);
      if (!lemma.empty()) per_doc[lemma]++;
    }
    for (const auto& [lemma, count] : per_doc) {
      table[lemma].doc_freq += 1;
      table[lemma].corpus_freq += count;
    }
  }
  return table;
}

// lemma -> (page_id -> term_freq), uncapped
inline std::map<std::string, std::map<std::uint64_t, std::uint64_t>> postings(
    const std::vector<wikindex::PlainDoc>& docs,
    const wikindex::LemmatizerSpec& spec) {
  std::map<std::string, std::map<std::uint64_t, std::uint64_t>> table;
  for (const auto& doc : docs) {
    for (const auto& token : wikindex::tokenize(doc.text)) {
      if (!token.has_letter) continue;
      const std::string lemma = wikindex::lemmatize(token.surface, spec);
      if (!lemma.empty()) table[lemma][doc.page_id]++;
    }
  }
  return table;
}

inline std::uint64_t word_count(const std::string& text) {
  return wikindex::tokenize(text).size();
}

}  // namespace oracle

#endif  // WIKINDEX_TEST_ORACLE_HPP
