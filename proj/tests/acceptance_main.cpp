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
//
// Acceptance suite: runs every acceptance criterion end to end and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wikindex/dump.hpp"
#include "wikindex/index.hpp"
#include "wikindex/lemmatizer.hpp"
#include "wikindex/query.hpp"
#include "wikindex/stats.hpp"
#include "wikindex/wikitext.hpp"

namespace fs = std::filesystem;
using namespace wikindex;

namespace {

struct Failure {
  std::string message;
};

struct Context {
  fs::path data_dir;
  fs::path cli;
  fs::path work;
  mutable std::string note;  // appended to the PASS line when set

  void require(bool ok, const std::string& message) const {
    if (!ok) throw Failure{message};
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path.string()};
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

std::string squash_ws(const std::string& text) {
  std::string out;
  bool pending = false;
  for (const char c : text) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

int run_cli(const Context& ctx, const std::string& args) {
  const std::string cmd = ctx.cli.string() + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

/// Peak resident set (bytes) over all reaped child processes.
std::uint64_t children_max_rss_bytes() {
  struct rusage usage {};
  getrusage(RUSAGE_CHILDREN, &usage);
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
}

PlainDoc make_doc(std::uint64_t id, const std::string& title,
                  const std::string& text) {
  PlainDoc d;
  d.page_id = id;
  d.title = title;
  d.text = text;
  d.word_count = tokenize(text).size();
  return d;
}

IndexReader build(const std::vector<PlainDoc>& docs, const fs::path& store,
                  const LemmatizerSpec& spec, IndexConfig config = {}) {
  config.store_path = store;
  std::size_t i = 0;
  return build_index(
      [&]() -> std::optional<PlainDoc> {
        if (i >= docs.size()) return std::nullopt;
        return docs[i++];
      },
      spec, config);
}

std::vector<PlainDoc> parse_mini_dump(const Context& ctx) {
  DumpReader reader(ctx.data_dir / "mini_dump.xml");
  std::vector<PlainDoc> docs;
  while (auto page = reader.next()) docs.push_back(parse_page(*page));
  return docs;
}

// --------------------------------------------------------------------------
// 1. Golden parsing: the eight transformation rules plus the full worked
//    example, modulo collapsed whitespace. Under one second.

void criterion_golden_parsing(const Context& ctx) {
  auto eq = [&](const std::string& got, const std::string& want,
                const std::string& label) {
    ctx.require(squash_ws(got) == squash_ws(want),
                label + ": got '" + got + "', want '" + want + "'");
  };

  // Image caption survives, everything else in the image tag goes.
  eq(convert("[[Image:Asimov.jpg|thumb|180px|right|[[Isaac Asimov]] with his "
             "[[typewriter]].]]"),
     "Isaac Asimov with his typewriter.", "image caption");
  // Interwiki deleted under the default configuration.
  eq(convert("text [[fr:Chat]] more"), "text more", "interwiki delete");
  // Category links deleted.
  eq(convert("[[Category:Japan]]"), "", "category delete");
  // Templates, quoted blocks, tables deleted.
  eq(convert("a {{quote|To be}} b {| class=\"t\" | x |} c"), "a b c",
     "templates and tables");
  // Apostrophe markup removed, text kept.
  eq(convert("''italic'' '''bold'''"), "italic bold", "apostrophe markup");
  // Internal links keep their visible text (the interwiki one is expanded
  // here, which requires the keep-interwiki configuration).
  {
    ParserConfig keep;
    keep.remove_not_expand_iwiki = false;
    eq(convert("[[w:Wikipedia:Interwikimedia_links|text to expand]] [[run]] "
               "[[Russian language|Russian]] their [[flower|blossoms]].",
               keep),
       "text to expand run Russian their blossoms.", "internal links");
  }
  // External links keep the visible text, the URL goes.
  eq(convert("[http://example.com Russian]"), "Russian", "external link");
  eq(convert("[http://www.hedpe.ru site hedpe.ru - russian fan-site]"),
     "site hedpe.ru - russian fan-site", "external link label");
  // Footnote body moves to the end of the text.
  eq(convert("word1<ref>Ref text.</ref> word2."), "word1 word2.\n\nRef text.",
     "footnotes");

  // Full worked example.
  const std::string input = read_file(ctx.data_dir / "sakura.wiki");
  const std::string expected = read_file(ctx.data_dir / "sakura_expected.txt");
  eq(convert(input), expected, "worked example");
}

// --------------------------------------------------------------------------
// 2. Fuzzed parser safety: 10,000 random markup strings; output carries no
//    markup openers and conversion is idempotent. Under thirty seconds.

std::string random_markup(std::mt19937& rng) {
  static const char* kPieces[] = {
      "{{",      "}}",      "[[",     "]]",    "{|",       "|}",
      "<ref>",   "</ref>",  "<ref name=\"x\"/>", "<pre>", "</pre>",
      "<!--",    "-->",     "''",     "'''",   "|",        ":",
      "Image:",  "File:",   "Category:", "en:", "w:",
      "http://a.b", "[",    "]",      "word",  "tea",      "x y",
      "\n",      " ",       "&lt;",   "&amp;", "&nbsp;",   "<br/>",
      "{",       "}",       "\xD0\xA7\xD0\xB0\xD0\xB9",    "\"q\"",
      "<code>",  "</code>", "<source>", "</source>", "42", ".",
  };
  std::uniform_int_distribution<std::size_t> pick(
      0, sizeof(kPieces) / sizeof(kPieces[0]) - 1);
  std::uniform_int_distribution<int> len(0, 40);
  std::string out;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) out += kPieces[pick(rng)];
  return out;
}

void criterion_fuzz(const Context& ctx) {
  std::mt19937 rng(0x5EED);
  for (int i = 0; i < 10000; ++i) {
    const std::string input = random_markup(rng);
    const std::string once = convert(input);
    for (const char* bad : {"{{", "[[", "<ref", "<pre", "<!--"}) {
      ctx.require(once.find(bad) == std::string::npos,
                  std::string("forbidden '") + bad + "' for input: " + input);
    }
    ctx.require(convert(once) == once, "not idempotent for input: " + input);
  }
}

// --------------------------------------------------------------------------
// 3. Index oracle equivalence on the bundled mini dump. Under ten seconds.

void criterion_index_oracle(const Context& ctx) {
  const auto docs = parse_mini_dump(ctx);
  ctx.require(docs.size() >= 20, "mini dump should have ~20 articles");
  const auto spec = LemmatizerSpec::for_language("simple");
  const auto index = build(docs, ctx.work / "oracle_idx", spec);

  // Brute-force rescan, independent of the builder machinery.
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> expected;
  for (const auto& doc : docs) {
    std::map<std::string, std::uint64_t> per_doc;
    for (const auto& token : tokenize(doc.text)) {
      if (!token.has_letter) continue;
      const std::string lemma = lemmatize(token.surface, spec);
      if (!lemma.empty()) per_doc[lemma]++;
    }
    for (const auto& [lemma, count] : per_doc) {
      expected[lemma].first += 1;       // doc_freq
      expected[lemma].second += count;  // corpus_freq
    }
  }
  ctx.require(index.terms().size() == expected.size(),
              "lexeme count mismatch");
  for (const TermRecord& term : index.terms()) {
    const auto it = expected.find(term.lemma);
    ctx.require(it != expected.end(), "unexpected lemma " + term.lemma);
    ctx.require(term.doc_freq == it->second.first,
                "doc_freq mismatch for " + term.lemma);
    ctx.require(term.corpus_freq == it->second.second,
                "corpus_freq mismatch for " + term.lemma);
  }
  for (const auto& doc : docs) {
    const PageRecord* page = index.page_by_id(doc.page_id);
    ctx.require(page != nullptr, "missing page " + doc.title);
    ctx.require(page->word_count == tokenize(doc.text).size(),
                "word_count mismatch for " + doc.title);
  }
}

// --------------------------------------------------------------------------
// 4. Cap semantics: one lemma in five documents, cap three.

void criterion_cap(const Context& ctx) {
  std::vector<PlainDoc> docs;
  for (int i = 1; i <= 5; ++i) {
    std::string text;
    for (int k = 0; k < i; ++k) text += "tea ";
    docs.push_back(make_doc(i, "Doc" + std::to_string(i), text));
  }
  IndexConfig config;
  config.max_pages_per_lexeme = 3;
  const auto index = build(docs, ctx.work / "cap_idx",
                           LemmatizerSpec::for_language("ru"), config);
  const auto tea = index.term_lookup("tea");
  ctx.require(tea.has_value(), "lemma missing");
  ctx.require(tea->doc_freq == 5, "doc_freq must stay uncapped");
  const auto rows = index.postings(tea->term_id);
  ctx.require(rows.size() == 3, "exactly cap postings stored");
  ctx.require(rows[0].term_freq == 5 && rows[1].term_freq == 4 &&
                  rows[2].term_freq == 3,
              "postings must keep the three largest frequencies");
}

// --------------------------------------------------------------------------
// 5. TF-IDF on the three-document fixture, natural log, 1e-9 relative.

void criterion_tfidf(const Context& ctx) {
  const auto index = build({make_doc(1, "One", "a b a"),
                            make_doc(2, "Two", "b c"),
                            make_doc(3, "Three", "c c c")},
                           ctx.work / "tfidf_idx",
                           LemmatizerSpec::for_language("ru"));
  const auto weights = doc_term_weights(index, "One", 10, false);
  ctx.require(weights.size() == 2, "two weighted terms expected");
  const double want_a = 2.0 * std::log(3.0);
  const double want_b = 1.0 * std::log(3.0 / 2.0);
  ctx.require(weights[0].lemma == "a", "highest weight must be 'a'");
  ctx.require(std::abs(weights[0].weight - want_a) / want_a < 1e-9,
              "weight of 'a' outside 1e-9 relative");
  ctx.require(weights[1].lemma == "b", "second weight must be 'b'");
  ctx.require(std::abs(weights[1].weight - want_b) / want_b < 1e-9,
              "weight of 'b' outside 1e-9 relative");

  // idf is exactly zero when a lemma occurs in every document.
  const auto everywhere = build({make_doc(1, "A", "tea"),
                                 make_doc(2, "B", "tea x"),
                                 make_doc(3, "C", "y tea")},
                                ctx.work / "idf0_idx",
                                LemmatizerSpec::for_language("ru"));
  ctx.require(idf(everywhere, "tea") == 0.0, "idf must be exactly 0 at DF=D");
}

// --------------------------------------------------------------------------
// 6. Conjunctive query vs set-intersection brute force; exact.

void criterion_conjunctive(const Context& ctx) {
  {
    const auto index = build({make_doc(1, "First", "green tea green"),
                              make_doc(2, "Second", "tea"),
                              make_doc(3, "Third", "green")},
                             ctx.work / "conj_idx",
                             LemmatizerSpec::for_language("ru"));
    const auto hits = pages_for_lemmas(index, {"green", "tea"}, 10);
    ctx.require(hits.size() == 1, "only one page has both lemmas");
    ctx.require(hits[0].page_title == "First" && hits[0].sum_tf == 3,
                "fixture result must be First with sum 3");
  }

  const auto docs = parse_mini_dump(ctx);
  const auto spec = LemmatizerSpec::for_language("simple");
  const auto index = build(docs, ctx.work / "conj_mini_idx", spec);
  const std::set<std::string> query{"green", "tea"};
  const auto hits = pages_for_lemmas(index, query, 100);

  std::map<std::string, std::uint64_t> brute;
  for (const auto& doc : docs) {
    std::map<std::string, std::uint64_t> counts;
    for (const auto& token : tokenize(doc.text)) {
      if (!token.has_letter) continue;
      counts[lemmatize(token.surface, spec)]++;
    }
    std::uint64_t sum = 0;
    bool all = true;
    for (const auto& lemma : query) {
      const auto it = counts.find(lemma);
      if (it == counts.end()) {
        all = false;
        break;
      }
      sum += it->second;
    }
    if (all) brute[normalize_title(doc.title)] = sum;
  }
  ctx.require(hits.size() == brute.size(), "hit set differs from brute force");
  for (const auto& hit : hits) {
    const auto it = brute.find(hit.page_title);
    ctx.require(it != brute.end(), "unexpected hit " + hit.page_title);
    ctx.require(hit.sum_tf == it->second, "sum_tf mismatch " + hit.page_title);
  }
  for (std::size_t i = 1; i < hits.size(); ++i) {
    const bool ordered =
        hits[i - 1].sum_tf > hits[i].sum_tf ||
        (hits[i - 1].sum_tf == hits[i].sum_tf &&
         hits[i - 1].page_title < hits[i].page_title);
    ctx.require(ordered, "ordering violated at rank " + std::to_string(i));
  }
}

// --------------------------------------------------------------------------
// 7. Zipf fit recovery: noiseless synthetic data generated from reference
//    parameters must be recovered to 1e-9. Under one second.

void criterion_zipf(const Context& ctx) {
  const double params[][2] = {{-1.048, 16.13}, {-1.1740404, 14.290272}};
  for (const auto& p : params) {
    std::vector<double> freqs;
    freqs.reserve(10000);
    for (std::size_t r = 1; r <= 10000; ++r) {
      freqs.push_back(
          std::exp(p[1] + p[0] * std::log(static_cast<double>(r))));
    }
    const auto fit = fit_power_law(freqs, 10000);
    ctx.require(std::abs(fit.slope - p[0]) < 1e-9,
                "slope not recovered within 1e-9");
    ctx.require(std::abs(fit.intercept - p[1]) < 1e-9,
                "intercept not recovered within 1e-9");
  }
}

// --------------------------------------------------------------------------
// 8. Snapshot comparison reproduces a reference ratio column.

void criterion_compare(const Context& ctx) {
  CorpusStats a, b;
  a.articles = 239290;
  b.articles = 25220;
  a.lexemes = 1434000;
  b.lexemes = 148700;
  a.total_words = 32930000;
  b.total_words = 2283900;
  a.relations = 1;
  b.relations = 1;
  const auto rows = compare_snapshots(a, b);
  const char* want[] = {"9.5", "9.6", "14.4"};
  for (int i = 0; i < 3; ++i) {
    ctx.require(rows[i].ratio.has_value(), "ratio missing");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", *rows[i].ratio);
    ctx.require(std::string(buf) == want[i],
                std::string("ratio ") + buf + " != " + want[i]);
  }
}

// --------------------------------------------------------------------------
// 9. Determinism: two end-to-end CLI builds (different thread counts)
//    export byte-identical TSVs.

void criterion_determinism(const Context& ctx) {
  const std::string dump = (ctx.data_dir / "mini_dump.xml").string();
  const fs::path idx1 = ctx.work / "det_t1";
  const fs::path idx2 = ctx.work / "det_t2";
  ctx.require(run_cli(ctx, "index --dump " + dump + " --index " +
                               idx1.string() +
                               " --lang simple --threads 1") == 0,
              "CLI index (threads=1) failed");
  ctx.require(run_cli(ctx, "index --dump " + dump + " --index " +
                               idx2.string() +
                               " --lang simple --threads 2") == 0,
              "CLI index (threads=2) failed");
  ctx.require(run_cli(ctx, "export --index " + idx1.string() + " --out " +
                               (ctx.work / "det_x1").string()) == 0,
              "export 1 failed");
  ctx.require(run_cli(ctx, "export --index " + idx2.string() + " --out " +
                               (ctx.work / "det_x2").string()) == 0,
              "export 2 failed");
  for (const char* file : {"term.tsv", "page.tsv", "term_page.tsv"}) {
    ctx.require(read_file(ctx.work / "det_x1" / file) ==
                    read_file(ctx.work / "det_x2" / file),
                std::string("export differs: ") + file);
  }
}

// --------------------------------------------------------------------------
// 10. Streaming bound: index a synthetic 200 MB dump inside a memory
//     ceiling of (largest page + fixed budget). Under five minutes.

void criterion_streaming(const Context& ctx) {
  const fs::path dump = ctx.work / "big_dump.xml";
  constexpr std::uint64_t kTargetBytes = 200ull << 20;
  std::uint64_t largest_page = 0;
  {
    std::ofstream out(dump, std::ios::binary);
    ctx.require(out.good(), "cannot create synthetic dump");
    out << "<mediawiki>\n";
    std::mt19937 rng(0xD00D);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uint64_t written = 0;
    std::uint64_t page_id = 0;
    while (written < kTargetBytes) {
      std::string text;
      // A few outsized pages make "largest page" meaningful.
      const bool big = (page_id % 997 == 0);
      const int words = big ? 150000 : 1200 + static_cast<int>(rng() % 800);
      text.reserve(static_cast<std::size_t>(words) * 8);
      for (int w = 0; w < words; ++w) {
        // Skewed vocabulary draw over 20k words.
        const int word = static_cast<int>(std::pow(20000.0, uni(rng))) - 1;
        text += "w" + std::to_string(word < 0 ? 0 : word);
        if (w % 13 == 0) text += " [[w" + std::to_string(word + 1) + "]]";
        if (w % 57 == 0) text += " '''bold'''";
        if (w % 211 == 0) text += " {{cite|x}}";
        text.push_back(' ');
      }
      std::string page = "<page><title>Page ";
      page += std::to_string(page_id);
      page += "</title><ns>0</ns><id>";
      page += std::to_string(page_id + 1);
      page += "</id><revision><text>";
      page += text;
      page += "</text></revision></page>\n";
      out << page;
      written += page.size();
      largest_page = std::max<std::uint64_t>(largest_page, page.size());
      ++page_id;
    }
    out << "</mediawiki>\n";
    ctx.require(out.good(), "failed writing synthetic dump");
  }

  // Ceiling: largest single page plus a fixed 150 MiB budget; well below
  // the dump size, which is the point of the streaming contract.
  const std::uint64_t ceiling = largest_page + (150ull << 20);

  const int rc = run_cli(
      ctx, "index --dump " + dump.string() + " --index " +
               (ctx.work / "big_idx").string() +
               " --lang simple --threads 2 --spill-budget-mb 32");
  ctx.require(rc == 0, "CLI index of the synthetic dump failed");

  const std::uint64_t peak = children_max_rss_bytes();
  ctx.require(peak > 0, "rusage reported no child memory");
  std::ostringstream msg;
  msg << "peak child RSS " << (peak >> 20) << " MiB, ceiling "
      << (ceiling >> 20) << " MiB (largest page " << (largest_page >> 10)
      << " KiB + 150 MiB)";
  ctx.require(peak <= ceiling, "exceeded: " + msg.str());
  ctx.note = msg.str();

  // The index must be readable and plausible.
  const auto index = IndexReader::open(ctx.work / "big_idx");
  ctx.require(index.pages().size() > 1000, "synthetic index too small");
  std::error_code ec;
  fs::remove(dump, ec);  // reclaim scratch space
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<void(const Context&)> body;
};

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  ctx.data_dir = WIKINDEX_TEST_DATA_DIR;
  ctx.cli = WIKINDEX_CLI_PATH;
  ctx.work = fs::temp_directory_path() /
             ("wikindex_acceptance_" + std::to_string(::getpid()));
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--data") ctx.data_dir = argv[i + 1];
    if (flag == "--cli") ctx.cli = argv[i + 1];
    if (flag == "--work") ctx.work = argv[i + 1];
  }
  std::error_code ec;
  fs::remove_all(ctx.work, ec);
  fs::create_directories(ctx.work);

  const std::vector<Criterion> criteria = {
      {1, "golden-parsing", 1.0, criterion_golden_parsing},
      {2, "fuzzed-parser-safety", 30.0, criterion_fuzz},
      {3, "index-oracle-equivalence", 10.0, criterion_index_oracle},
      {4, "cap-semantics", 0.0, criterion_cap},
      {5, "tf-idf", 0.0, criterion_tfidf},
      {6, "conjunctive-query", 0.0, criterion_conjunctive},
      {7, "zipf-fit-recovery", 1.0, criterion_zipf},
      {8, "snapshot-comparison", 0.0, criterion_compare},
      {9, "export-determinism", 0.0, criterion_determinism},
      {10, "streaming-bound", 300.0, criterion_streaming},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    ctx.note.clear();
    try {
      criterion.body(ctx);
    } catch (const Failure& f) {
      error = f.message;
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (error.empty() && criterion.limit_seconds > 0.0 &&
        elapsed > criterion.limit_seconds) {
      std::ostringstream msg;
      msg << "took " << elapsed << "s, limit " << criterion.limit_seconds
          << "s";
      error = msg.str();
    }
    const std::string detail = error.empty() ? ctx.note : error;
    char line[512];
    std::snprintf(line, sizeof line, "%s %2d  %-26s (%.2fs)%s%s",
                  error.empty() ? "PASS" : "FAIL", criterion.number,
                  criterion.name.c_str(), elapsed, detail.empty() ? "" : ": ",
                  detail.c_str());
    std::cout << line << std::endl;
    if (!error.empty()) ++failures;
  }

  fs::remove_all(ctx.work, ec);
  return failures;
}
