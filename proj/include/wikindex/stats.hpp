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

#ifndef WIKINDEX_STATS_HPP
#define WIKINDEX_STATS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wikindex/index.hpp"

namespace wikindex {

/// Least-squares fit of ln(freq) against ln(rank): the model is
/// freq(rank) = exp(slope * ln(rank) + intercept).
struct PowerLawFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::uint64_t k = 0;      // number of leading ranks fitted
  double residual = 0.0;    // sum of squared log-residuals
};

struct CorpusStats {
  std::uint64_t articles = 0;
  std::uint64_t lexemes = 0;
  std::uint64_t total_words = 0;  // sum of corpus_freq
  std::uint64_t relations = 0;    // term_page rows
};

/// One field of a snapshot comparison; divisor zero leaves ratio empty.
struct ComparisonRow {
  std::string field;
  std::uint64_t value_a = 0;
  std::uint64_t value_b = 0;
  std::optional<double> ratio;    // a / b
  std::optional<double> percent;  // 100 * a / b
};

/// Top-k corpus frequencies, descending (frequency of rank r at index r-1).
/// Ties in frequency are resolved lemma-ascending, which picks the lemmas
/// but not the frequency values. Throws EmptyIndex.
std::vector<std::uint64_t> rank_frequencies(const IndexReader& index,
                                            std::uint64_t k);

/// Closed-form OLS over ranks 1..k (clamped to the data size).
/// Throws InsufficientData for k < 2 or nonpositive frequencies.
PowerLawFit fit_power_law(std::span<const double> freqs, std::uint64_t k);
PowerLawFit fit_power_law(const std::vector<std::uint64_t>& freqs,
                          std::uint64_t k);

CorpusStats corpus_summary(const IndexReader& index);

std::vector<ComparisonRow> compare_snapshots(const CorpusStats& a,
                                             const CorpusStats& b);
/// Aligned plain-text table, ratios to one decimal, percentages to integers.
std::string comparison_text(const std::vector<ComparisonRow>& rows);
std::string comparison_tsv(const std::vector<ComparisonRow>& rows);

/// Most frequent lemmas with their corpus frequencies, descending, with a
/// lemma-ascending tie-break.
std::vector<std::pair<std::string, std::uint64_t>> top_words(
    const IndexReader& index, std::uint64_t n);

/// CSV with columns rank,freq and one fitted column per entry of
/// `fit_ranges` (named fit_<range>); optionally a trailing doc_freq column
/// with the document counts of the same ranked lemmas.
void emit_plot_data(const IndexReader& index, std::uint64_t k,
                    const std::vector<std::uint64_t>& fit_ranges,
                    const std::filesystem::path& out,
                    bool include_doc_freq = false);

}  // namespace wikindex

#endif  // WIKINDEX_STATS_HPP
