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

#include "wikindex/query.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "wikindex/errors.hpp"

#include "json.hpp"

namespace wikindex {

double idf(const IndexReader& index, std::string_view lemma) {
  const auto term = index.term_lookup(lemma);
  if (!term) throw UnknownLemma("no such lemma: " + std::string(lemma));
  const double documents = static_cast<double>(index.pages().size());
  return std::log(documents / static_cast<double>(term->doc_freq));
}

std::vector<WeightedTerm> doc_term_weights(const IndexReader& index,
                                           std::string_view page_title,
                                           std::uint64_t top_k,
                                           bool normalize_tf) {
  const PageRecord* page = index.page_by_title(page_title);
  if (!page) throw UnknownPage("no such page: " + std::string(page_title));
  if (normalize_tf && page->word_count == 0) return {};

  std::vector<WeightedTerm> out;
  for (const auto& [lemma, term_freq] : index.doc_terms(page->page_id)) {
    WeightedTerm wt;
    wt.lemma = lemma;
    wt.tf = normalize_tf ? static_cast<double>(term_freq) /
                               static_cast<double>(page->word_count)
                         : static_cast<double>(term_freq);
    wt.idf = idf(index, lemma);
    wt.weight = wt.tf * wt.idf;
    out.push_back(std::move(wt));
  }
  std::sort(out.begin(), out.end(), [](const WeightedTerm& a,
                                       const WeightedTerm& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.lemma < b.lemma;
  });
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

std::vector<RankedPage> pages_for_lemmas(const IndexReader& index,
                                         const std::set<std::string>& lemmas,
                                         std::uint64_t top_k) {
  if (lemmas.empty()) throw Error("pages_for_lemmas: empty lemma set");

  // Intersection over stored postings, accumulating the frequency sums.
  // A page qualifies when every query lemma has a stored row for it.
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>>
      acc;  // page_id -> (matched lemmas, sum_tf)
  for (const std::string& lemma : lemmas) {
    const auto term = index.term_lookup(lemma);
    if (!term) return {};
    for (const TermPageRecord& row : index.postings(term->term_id)) {
      auto& slot = acc[row.page_id];
      slot.first++;
      slot.second += row.term_freq;
    }
  }

  std::vector<RankedPage> out;
  for (const auto& [page_id, matched] : acc) {
    if (matched.first != lemmas.size()) continue;
    const PageRecord* page = index.page_by_id(page_id);
    if (!page) continue;
    out.push_back(RankedPage{page->page_title, matched.second,
                             page->word_count});
  }
  std::sort(out.begin(), out.end(), [](const RankedPage& a,
                                       const RankedPage& b) {
    if (a.sum_tf != b.sum_tf) return a.sum_tf > b.sum_tf;
    return a.page_title < b.page_title;
  });
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

namespace {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

}  // namespace

std::string weighted_terms_tsv(const std::vector<WeightedTerm>& terms) {
  std::string out = "rank\tlemma\ttf\tidf\tweight\n";
  std::uint64_t rank = 1;
  for (const WeightedTerm& t : terms) {
    out += std::to_string(rank++);
    out += '\t';
    out += t.lemma;
    out += '\t';
    out += format_double(t.tf);
    out += '\t';
    out += format_double(t.idf);
    out += '\t';
    out += format_double(t.weight);
    out += '\n';
  }
  return out;
}

std::string ranked_pages_tsv(const std::vector<RankedPage>& pages) {
  std::string out = "rank\tsum_tf\tpage_title\tn_words\n";
  std::uint64_t rank = 1;
  for (const RankedPage& p : pages) {
    out += std::to_string(rank++);
    out += '\t';
    out += std::to_string(p.sum_tf);
    out += '\t';
    out += p.page_title;
    out += '\t';
    out += std::to_string(p.n_words);
    out += '\n';
  }
  return out;
}

std::string weighted_terms_jsonl(const std::vector<WeightedTerm>& terms) {
  std::string out;
  std::uint64_t rank = 1;
  for (const WeightedTerm& t : terms) {
    nlohmann::json j;
    j["rank"] = rank++;
    j["lemma"] = t.lemma;
    j["tf"] = t.tf;
    j["idf"] = t.idf;
    j["weight"] = t.weight;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string ranked_pages_jsonl(const std::vector<RankedPage>& pages) {
  std::string out;
  std::uint64_t rank = 1;
  for (const RankedPage& p : pages) {
    nlohmann::json j;
    j["rank"] = rank++;
    j["sum_tf"] = p.sum_tf;
    j["page_title"] = p.page_title;
    j["n_words"] = p.n_words;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace wikindex
