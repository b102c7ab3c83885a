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

#include "doctest.h"

#include <cmath>
#include <sstream>

#include "test_util.hpp"
#include "wikindex/errors.hpp"
#include "wikindex/stats.hpp"

using namespace wikindex;

namespace {

PlainDoc doc(std::uint64_t id, const std::string& title,
             const std::string& text) {
  PlainDoc d;
  d.page_id = id;
  d.title = title;
  d.text = text;
  d.word_count = tokenize(text).size();
  return d;
}

IndexReader build_from(const std::vector<PlainDoc>& docs,
                       const std::filesystem::path& store) {
  IndexConfig config;
  config.store_path = store;
  std::size_t i = 0;
  return build_index(
      [&]() -> std::optional<PlainDoc> {
        if (i >= docs.size()) return std::nullopt;
        return docs[i++];
      },
      LemmatizerSpec::for_language("ru"), config);
}

/// Noiseless frequencies from the model exp(intercept + slope ln r).
std::vector<double> synthetic_freqs(double slope, double intercept,
                                    std::size_t n) {
  std::vector<double> freqs;
  freqs.reserve(n);
  for (std::size_t r = 1; r <= n; ++r) {
    freqs.push_back(
        std::exp(intercept + slope * std::log(static_cast<double>(r))));
  }
  return freqs;
}

std::vector<PlainDoc> three_docs() {
  return {doc(1, "One", "a b a"), doc(2, "Two", "b c"),
          doc(3, "Three", "c c c")};
}

}  // namespace

TEST_SUITE("stats") {

TEST_CASE("rank_frequencies basics") {
  testutil::TempDir tmp("rank");
  const auto index =
      build_from({doc(1, "D", "a a a b b c")}, tmp.path() / "idx");
  CHECK(rank_frequencies(index, 10) ==
        std::vector<std::uint64_t>{3, 2, 1});
  CHECK(rank_frequencies(index, 2) == std::vector<std::uint64_t>{3, 2});
}

TEST_CASE("rank_frequencies on the three-doc fixture") {
  testutil::TempDir tmp("rank3");
  const auto index = build_from(three_docs(), tmp.path() / "idx");
  // c:4, a:2, b:2 — frequency ties change lemma order, not the values.
  CHECK(rank_frequencies(index, 3) == std::vector<std::uint64_t>{4, 2, 2});
}

TEST_CASE("rank_frequencies on an empty index") {
  testutil::TempDir tmp("rankempty");
  const auto index = build_from({}, tmp.path() / "idx");
  CHECK_THROWS_AS(rank_frequencies(index, 5), EmptyIndex);
}

TEST_CASE("power-law fit recovers exact synthetic parameters") {
  // Reference parameter pairs; synthetic data generated from them must be
  // recovered to 1e-9.
  const double cases[][2] = {
      {-1.048, 16.13},
      {-1.1740404, 14.290272},
      {-0.819, 14.51},
  };
  for (const auto& c : cases) {
    const auto freqs = synthetic_freqs(c[0], c[1], 10000);
    const auto fit = fit_power_law(freqs, 10000);
    CHECK(fit.slope == doctest::Approx(c[0]).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(c[1]).epsilon(1e-9));
    CHECK(fit.residual < 1e-12);
    CHECK(fit.k == 10000);
  }
}

TEST_CASE("fit range is honored independently per range") {
  // Two-regime data: different slopes over the first 100 vs 10000 ranks.
  std::vector<double> freqs = synthetic_freqs(-0.8, 14.0, 100);
  const auto tail = synthetic_freqs(-1.2, 15.0, 10000);
  freqs.insert(freqs.end(), tail.begin() + 100, tail.end());
  const auto head_fit = fit_power_law(freqs, 100);
  const auto full_fit = fit_power_law(freqs, 10000);
  CHECK(head_fit.slope == doctest::Approx(-0.8).epsilon(1e-9));
  CHECK(full_fit.slope != doctest::Approx(-0.8).epsilon(1e-3));
}

TEST_CASE("constant frequencies fit a flat line") {
  const std::vector<std::uint64_t> freqs{5, 5, 5, 5};
  const auto fit = fit_power_law(freqs, 4);
  CHECK(fit.slope == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("fit input validation") {
  CHECK_THROWS_AS(fit_power_law(std::vector<std::uint64_t>{5}, 5),
                  InsufficientData);
  CHECK_THROWS_AS(fit_power_law(std::vector<std::uint64_t>{5, 4}, 1),
                  InsufficientData);
  const std::vector<double> with_zero{5.0, 0.0, 3.0};
  CHECK_THROWS_AS(fit_power_law(std::span<const double>(with_zero), 3),
                  InsufficientData);
}

TEST_CASE("corpus_summary counts") {
  testutil::TempDir tmp("summary");
  const auto empty = build_from({}, tmp.path() / "empty");
  const auto empty_stats = corpus_summary(empty);
  CHECK(empty_stats.articles == 0);
  CHECK(empty_stats.lexemes == 0);
  CHECK(empty_stats.total_words == 0);
  CHECK(empty_stats.relations == 0);

  const auto index = build_from(three_docs(), tmp.path() / "idx");
  const auto stats = corpus_summary(index);
  CHECK(stats.articles == 3);
  CHECK(stats.lexemes == 3);
  CHECK(stats.total_words == 8);
  CHECK(stats.relations == 5);  // doc_freq sums: 1 + 2 + 2
}

TEST_CASE("compare_snapshots ratio column at one decimal") {
  // Articles 239.29k vs 25.22k, lexemes 1.434M vs 0.1487M, words 32.93M vs
  // 2.2839M: ratio column 9.5 / 9.6 / 14.4 at one decimal.
  CorpusStats a, b;
  a.articles = 239290;
  b.articles = 25220;
  a.lexemes = 1434000;
  b.lexemes = 148700;
  a.total_words = 32930000;
  b.total_words = 2283900;
  a.relations = 15710000;
  b.relations = 1652400;
  const auto rows = compare_snapshots(a, b);
  REQUIRE(rows.size() == 4);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.1f", *rows[0].ratio);
  CHECK(std::string(buf) == "9.5");
  std::snprintf(buf, sizeof buf, "%.1f", *rows[1].ratio);
  CHECK(std::string(buf) == "9.6");
  std::snprintf(buf, sizeof buf, "%.1f", *rows[2].ratio);
  CHECK(std::string(buf) == "14.4");
}

TEST_CASE("compare_snapshots growth percentage at integer precision") {
  // Lexemes 1.434M vs 1.2406M -> 116% at integer precision.
  CorpusStats now, before;
  now.lexemes = 1434000;
  before.lexemes = 1240600;
  now.articles = before.articles = 1;
  now.total_words = before.total_words = 1;
  now.relations = before.relations = 1;
  const auto rows = compare_snapshots(now, before);
  char buf[16];
  std::snprintf(buf, sizeof buf, "%.0f", *rows[1].percent);
  CHECK(std::string(buf) == "116");
}

TEST_CASE("compare_snapshots of identical stats is all ones") {
  CorpusStats s;
  s.articles = 10;
  s.lexemes = 20;
  s.total_words = 30;
  s.relations = 40;
  for (const auto& row : compare_snapshots(s, s)) {
    REQUIRE(row.ratio.has_value());
    CHECK(*row.ratio == doctest::Approx(1.0));
    CHECK(*row.percent == doctest::Approx(100.0));
  }
}

TEST_CASE("division by zero renders as n/a") {
  CorpusStats a, b;  // b all zero
  a.articles = 5;
  const auto rows = compare_snapshots(a, b);
  CHECK_FALSE(rows[0].ratio.has_value());
  const std::string text = comparison_text(rows);
  CHECK(text.find("n/a") != std::string::npos);
  const std::string tsv = comparison_tsv(rows);
  CHECK(tsv.find("n/a") != std::string::npos);
}

TEST_CASE("top_words ordering and truncation") {
  testutil::TempDir tmp("topwords");
  const auto index = build_from({doc(1, "D", "a a b")}, tmp.path() / "idx");
  const auto top1 = top_words(index, 1);
  REQUIRE(top1.size() == 1);
  CHECK(top1[0].first == "a");
  CHECK(top1[0].second == 2);
  CHECK(top_words(index, 99).size() == 2);

  const auto fixture = build_from(three_docs(), tmp.path() / "idx3");
  const auto top = top_words(fixture, 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0] == std::pair<std::string, std::uint64_t>{"c", 4});
  CHECK(top[1] == std::pair<std::string, std::uint64_t>{"a", 2});
  CHECK(top[2] == std::pair<std::string, std::uint64_t>{"b", 2});
}

TEST_CASE("plot data shape and header") {
  testutil::TempDir tmp("plot");
  std::vector<PlainDoc> docs;
  std::string text;
  for (int w = 0; w < 12; ++w) {
    for (int k = 0; k <= w; ++k) text += "w" + std::to_string(w) + " ";
  }
  docs.push_back(doc(1, "D", text));
  const auto index = build_from(docs, tmp.path() / "idx");

  emit_plot_data(index, 10, {5}, tmp.path() / "plot.csv");
  const auto csv = testutil::read_file(tmp.path() / "plot.csv");
  std::stringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "rank,freq,fit_5");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 10);

  emit_plot_data(index, 10, {100, 10000}, tmp.path() / "plot2.csv");
  const auto csv2 = testutil::read_file(tmp.path() / "plot2.csv");
  CHECK(csv2.rfind("rank,freq,fit_100,fit_10000\n", 0) == 0);

  emit_plot_data(index, 5, {5}, tmp.path() / "plot3.csv", true);
  const auto csv3 = testutil::read_file(tmp.path() / "plot3.csv");
  CHECK(csv3.rfind("rank,freq,fit_5,doc_freq\n", 0) == 0);
}

TEST_CASE("rank_frequencies ignores document order") {
  testutil::TempDir tmp("permute");
  const auto docs = three_docs();
  std::vector<PlainDoc> reversed(docs.rbegin(), docs.rend());
  const auto a = build_from(docs, tmp.path() / "a");
  const auto b = build_from(reversed, tmp.path() / "b");
  CHECK(rank_frequencies(a, 10) == rank_frequencies(b, 10));
}

TEST_CASE("plot fitted column reproduces an exact power law") {
  testutil::TempDir tmp("plotfit");
  // freq(r) = 2520 / r is integer for every rank 1..10, so the corpus
  // frequencies sit exactly on a power law and OLS recovery is exact.
  std::vector<PlainDoc> docs;
  std::string text;
  const std::uint64_t freqs[] = {2520, 1260, 840, 630, 504,
                                 420,  360,  315, 280, 252};
  for (int w = 0; w < 10; ++w) {
    for (std::uint64_t k = 0; k < freqs[w]; ++k) {
      text += "w" + std::to_string(w) + " ";
    }
  }
  docs.push_back(doc(1, "D", text));
  const auto index = build_from(docs, tmp.path() / "idx");
  emit_plot_data(index, 10, {10}, tmp.path() / "plot.csv");

  std::stringstream lines(testutil::read_file(tmp.path() / "plot.csv"));
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    // rank,freq,fit
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double freq = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const double fitted = std::stod(line.substr(c2 + 1));
    CHECK(fitted == doctest::Approx(freq).epsilon(1e-6));
  }
}

}  // TEST_SUITE
