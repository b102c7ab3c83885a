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

#ifndef WIKINDEX_STORE_FORMAT_HPP
#define WIKINDEX_STORE_FORMAT_HPP

#include <string>

#include "wikindex/index.hpp"

namespace wikindex::detail {

inline constexpr char kTermHeader[] = "term_id\tlemma\tdoc_freq\tcorpus_freq\n";
inline constexpr char kPageHeader[] = "page_id\tpage_title\tword_count\n";
inline constexpr char kTermPageHeader[] = "term_id\tpage_id\tterm_freq\n";

inline constexpr char kManifestFile[] = "manifest.json";
inline constexpr char kTermFile[] = "term.tsv";
inline constexpr char kPageFile[] = "page.tsv";
inline constexpr char kTermPageFile[] = "term_page.tsv";

inline void append_term_row(std::string& out, const TermRecord& t) {
  out += std::to_string(t.term_id);
  out += '\t';
  out += t.lemma;
  out += '\t';
  out += std::to_string(t.doc_freq);
  out += '\t';
  out += std::to_string(t.corpus_freq);
  out += '\n';
}

inline void append_page_row(std::string& out, const PageRecord& p) {
  out += std::to_string(p.page_id);
  out += '\t';
  out += p.page_title;
  out += '\t';
  out += std::to_string(p.word_count);
  out += '\n';
}

inline void append_term_page_row(std::string& out, const TermPageRecord& r) {
  out += std::to_string(r.term_id);
  out += '\t';
  out += std::to_string(r.page_id);
  out += '\t';
  out += std::to_string(r.term_freq);
  out += '\n';
}

void write_manifest(const std::filesystem::path& file,
                    const IndexManifest& manifest);
IndexManifest read_manifest(const std::filesystem::path& file);

}  // namespace wikindex::detail

#endif  // WIKINDEX_STORE_FORMAT_HPP
