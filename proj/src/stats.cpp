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

#include "wikindex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "wikindex/errors.hpp"

namespace wikindex {

namespace {

/// Terms ordered by (corpus_freq desc, lemma asc); shared by the ranking
/// operations so they agree on which lemma holds which rank.
std::vector<const TermRecord*> ranked_terms(const IndexReader& index) {
  std::vector<const TermRecord*> terms;
  terms.reserve(index.terms().size());
  for (const TermRecord& t : index.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(),
            [](const TermRecord* a, const TermRecord* b) {
              if (a->corpus_freq != b->corpus_freq) {
                return a->corpus_freq > b->corpus_freq;
              }
              return a->lemma < b->lemma;
            });
  return terms;
}

}  // namespace

std::vector<std::uint64_t> rank_frequencies(const IndexReader& index,
                                            std::uint64_t k) {
  if (index.terms().empty()) throw EmptyIndex("index has no terms");
  const auto terms = ranked_terms(index);
  const std::size_t n = std::min<std::size_t>(k, terms.size());
  std::vector<std::uint64_t> freqs;
  freqs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) freqs.push_back(terms[i]->corpus_freq);
  return freqs;
}

PowerLawFit fit_power_law(std::span<const double> freqs, std::uint64_t k) {
  const std::size_t n = std::min<std::size_t>(k, freqs.size());
  if (n < 2) {
    throw InsufficientData("power-law fit needs at least 2 ranks");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(freqs[i] > 0.0)) {
      throw InsufficientData("power-law fit needs positive frequencies");
    }
    const double x = std::log(static_cast<double>(i + 1));
    const double y = std::log(freqs[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double count = static_cast<double>(n);
  const double denom = count * sxx - sx * sx;
  PowerLawFit fit;
  fit.k = n;
  if (denom == 0.0) {
    // All x equal cannot happen for n >= 2 (ranks differ), but stay total.
    fit.slope = 0.0;
    fit.intercept = sy / count;
  } else {
    fit.slope = (count * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / count;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(static_cast<double>(i + 1));
    const double r = std::log(freqs[i]) - fit.slope * x - fit.intercept;
    fit.residual += r * r;
  }
  return fit;
}

PowerLawFit fit_power_law(const std::vector<std::uint64_t>& freqs,
                          std::uint64_t k) {
  std::vector<double> values(freqs.begin(), freqs.end());
  return fit_power_law(std::span<const double>(values), k);
}

CorpusStats corpus_summary(const IndexReader& index) {
  CorpusStats stats;
  stats.articles = index.pages().size();
  stats.lexemes = index.terms().size();
  stats.relations = index.relations().size();
  for (const TermRecord& t : index.terms()) stats.total_words += t.corpus_freq;
  return stats;
}

std::vector<ComparisonRow> compare_snapshots(const CorpusStats& a,
                                             const CorpusStats& b) {
  auto row = [](const char* field, std::uint64_t va, std::uint64_t vb) {
    ComparisonRow r;
    r.field = field;
    r.value_a = va;
    r.value_b = vb;
    if (vb != 0) {
      const double ratio = static_cast<double>(va) / static_cast<double>(vb);
      r.ratio = ratio;
      r.percent = 100.0 * ratio;
    }
    return r;
  };
  return {
      row("articles", a.articles, b.articles),
      row("lexemes", a.lexemes, b.lexemes),
      row("total_words", a.total_words, b.total_words),
      row("relations", a.relations, b.relations),
  };
}

namespace {

std::string format_ratio(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.1f", *v);
  return buf;
}

std::string format_percent(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.0f", *v);
  return buf;
}

}  // namespace

std::string comparison_text(const std::vector<ComparisonRow>& rows) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %16s %16s %8s %9s\n", "field", "a", "b",
                "a/b", "a/b %");
  out += buf;
  for (const ComparisonRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%-12s %16llu %16llu %8s %9s\n",
                  r.field.c_str(),
                  static_cast<unsigned long long>(r.value_a),
                  static_cast<unsigned long long>(r.value_b),
                  format_ratio(r.ratio).c_str(),
                  format_percent(r.percent).c_str());
    out += buf;
  }
  return out;
}

std::string comparison_tsv(const std::vector<ComparisonRow>& rows) {
  std::string out = "field\ta\tb\tratio\tpercent\n";
  for (const ComparisonRow& r : rows) {
    out += r.field;
    out += '\t';
    out += std::to_string(r.value_a);
    out += '\t';
    out += std::to_string(r.value_b);
    out += '\t';
    out += format_ratio(r.ratio);
    out += '\t';
    out += format_percent(r.percent);
    out += '\n';
  }
  return out;
}

std::vector<std::pair<std::string, std::uint64_t>> top_words(
    const IndexReader& index, std::uint64_t n) {
  const auto terms = ranked_terms(index);
  const std::size_t count = std::min<std::size_t>(n, terms.size());
  std::vector<std::pair<std::string, std::uint64_t>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.emplace_back(terms[i]->lemma, terms[i]->corpus_freq);
  }
  return out;
}

void emit_plot_data(const IndexReader& index, std::uint64_t k,
                    const std::vector<std::uint64_t>& fit_ranges,
                    const std::filesystem::path& out,
                    bool include_doc_freq) {
  if (index.terms().empty()) throw EmptyIndex("index has no terms");
  const auto terms = ranked_terms(index);
  const std::size_t rows = std::min<std::size_t>(k, terms.size());

  std::vector<std::uint64_t> freqs;
  freqs.reserve(terms.size());
  for (const TermRecord* t : terms) freqs.push_back(t->corpus_freq);

  std::vector<PowerLawFit> fits;
  fits.reserve(fit_ranges.size());
  for (const std::uint64_t range : fit_ranges) {
    fits.push_back(fit_power_law(freqs, range));
  }

  std::string data = "rank,freq";
  for (const std::uint64_t range : fit_ranges) {
    data += ",fit_" + std::to_string(range);
  }
  if (include_doc_freq) data += ",doc_freq";
  data += '\n';

  char buf[64];
  for (std::size_t i = 0; i < rows; ++i) {
    const std::uint64_t rank = i + 1;
    data += std::to_string(rank);
    data += ',';
    data += std::to_string(freqs[i]);
    for (const PowerLawFit& fit : fits) {
      const double fitted = std::exp(
          fit.slope * std::log(static_cast<double>(rank)) + fit.intercept);
      std::snprintf(buf, sizeof buf, ",%.9g", fitted);
      data += buf;
    }
    if (include_doc_freq) {
      data += ',';
      data += std::to_string(terms[i]->doc_freq);
    }
    data += '\n';
  }

  std::ofstream file(out, std::ios::binary);
  if (!file) throw StoreIoError("cannot write " + out.string());
  file.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!file) throw StoreIoError("failed writing " + out.string());
}

}  // namespace wikindex
