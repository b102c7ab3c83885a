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

#ifndef WIKINDEX_WIKITEXT_HPP
#define WIKINDEX_WIKITEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "wikindex/dump.hpp"

namespace wikindex {

struct ParserConfig {
  /// When true, interwiki links (2-3 letter prefix plus colon, and `w:`)
  /// are deleted; when false their visible text is kept.
  bool remove_not_expand_iwiki = true;
  /// Number of template-removal sweeps; each sweep strips one nesting level.
  unsigned template_passes = 2;
};

/// Natural-language text extracted from one wiki page.
struct PlainDoc {
  std::uint64_t page_id = 0;
  std::string title;
  std::string text;
  std::uint64_t word_count = 0;
};

/// Strips wiki markup from `wikitext` and returns plain text.
///
/// The pipeline, in order: HTML comments, <pre>, <source>/<code> (all removed
/// with their contents); <ref> bodies moved to the end of the text; templates
/// (`template_passes` sweeps); tables; combining acute accents; bold/italic
/// apostrophes; image links reduced to their caption; internal links reduced
/// to their visible text (categories deleted, interwiki per config); external
/// single-bracket links reduced to their label; residual markup openers
/// removed; XML-unsafe characters and entities replaced; whitespace
/// normalized. Total on any input, including unbalanced markup.
std::string convert(std::string_view wikitext, const ParserConfig& config = {});

/// Runs `convert` on the page body and counts tokens in the result.
PlainDoc parse_page(const RawPage& page, const ParserConfig& config = {});

}  // namespace wikindex

#endif  // WIKINDEX_WIKITEXT_HPP
