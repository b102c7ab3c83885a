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

#ifndef WIKINDEX_QUERY_HPP
#define WIKINDEX_QUERY_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "wikindex/index.hpp"

namespace wikindex {

/// One term of a document with its TF-IDF weight (weight = tf * idf).
struct WeightedTerm {
  std::string lemma;
  double tf = 0.0;  // raw term_freq, or term_freq / word_count
  double idf = 0.0;
  double weight = 0.0;
};

/// One result row of a multi-lemma page query, Table-style:
/// sum of term frequencies, title, page length in words.
struct RankedPage {
  std::string page_title;
  std::uint64_t sum_tf = 0;
  std::uint64_t n_words = 0;
};

/// Inverse document frequency ln(D / DF) of a lemma.
/// Zero when the lemma occurs in every document. Throws UnknownLemma.
double idf(const IndexReader& index, std::string_view lemma);

/// Terms of the page with `page_title`, ordered by weight descending with
/// lemma-ascending tie-break, truncated to top_k. With normalize_tf the
/// term frequency is divided by the page word count (empty result when the
/// word count is zero). Throws UnknownPage.
std::vector<WeightedTerm> doc_term_weights(const IndexReader& index,
                                           std::string_view page_title,
                                           std::uint64_t top_k,
                                           bool normalize_tf);

/// Pages whose stored postings contain every query lemma, ordered by the
/// sum of term frequencies descending with title-ascending tie-break,
/// truncated to top_k. A lemma absent from the index yields an empty result.
std::vector<RankedPage> pages_for_lemmas(const IndexReader& index,
                                         const std::set<std::string>& lemmas,
                                         std::uint64_t top_k);

/// TSV with header rank/lemma/tf/idf/weight.
std::string weighted_terms_tsv(const std::vector<WeightedTerm>& terms);
/// TSV with header rank/sum_tf/page_title/n_words.
std::string ranked_pages_tsv(const std::vector<RankedPage>& pages);
/// Line-delimited JSON records for machine use.
std::string weighted_terms_jsonl(const std::vector<WeightedTerm>& terms);
std::string ranked_pages_jsonl(const std::vector<RankedPage>& pages);

}  // namespace wikindex

#endif  // WIKINDEX_QUERY_HPP
