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

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wikindex/errors.hpp"
#include "wikindex/index.hpp"
#include "wikindex/pipeline.hpp"
#include "wikindex/query.hpp"
#include "wikindex/stats.hpp"
#include "wikindex/wikitext.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw wikindex::StoreIoError("cannot write " + out_path);
  out << content;
  if (!out) throw wikindex::StoreIoError("failed writing " + out_path);
}

/// Bad option values are usage errors, not data errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

long long parse_int(const std::string& value, const std::string& flag) {
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw UsageError("invalid number '" + value + "' for " + flag);
  }
}

std::vector<std::string> split_csv(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wikindex::FileNotFound("cannot read " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

/// Queries take surface words as well as lemmas; map them through the
/// lemmatizer the index was built with.
wikindex::LemmatizerSpec index_lemmatizer(const wikindex::IndexReader& index) {
  const auto& m = index.manifest();
  if (m.lemmatizer_kind == "english-suffix") {
    wikindex::LemmatizerSpec spec;
    spec.kind = wikindex::LemmatizerKind::kEnglishSuffix;
    spec.language = m.language;
    return spec;
  }
  wikindex::LemmatizerSpec spec;
  spec.kind = wikindex::LemmatizerKind::kNormalizeOnly;
  spec.language = m.language;
  return spec;
}

struct IndexArgs {
  std::string dump;
  std::string index_dir;
  std::string lang;
  std::uint64_t max_pages_per_lexeme = 1000;
  bool keep_interwiki = false;
  bool keep_redirects = false;
  std::string namespaces = "0";
  std::uint64_t max_pages = 0;
  unsigned threads = 0;
  unsigned template_passes = 2;
  std::uint64_t spill_budget_mb = 256;
  bool overwrite = false;
  bool no_digest = false;
};

int cmd_index(const IndexArgs& args) {
  wikindex::PipelineOptions options;
  options.ingest.skip_redirects = !args.keep_redirects;
  options.ingest.namespaces_kept.clear();
  for (const std::string& ns : split_csv(args.namespaces)) {
    options.ingest.namespaces_kept.insert(
        static_cast<int>(parse_int(ns, "--namespaces")));
  }
  if (args.max_pages > 0) options.ingest.max_pages = args.max_pages;
  options.parser.remove_not_expand_iwiki = !args.keep_interwiki;
  options.parser.template_passes = args.template_passes;
  options.lemmatizer = wikindex::LemmatizerSpec::for_language(args.lang);
  options.index.store_path = args.index_dir;
  options.index.max_pages_per_lexeme = args.max_pages_per_lexeme;
  options.index.overwrite = args.overwrite;
  options.index.spill_budget_bytes = args.spill_budget_mb << 20;
  options.threads = args.threads;
  options.compute_digest = !args.no_digest;
  options.progress = [](std::uint64_t pages) {
    if (pages % 1000 == 0) {
      std::cerr << "indexed " << pages << " pages\n";
    }
  };

  const wikindex::PipelineResult result =
      wikindex::index_dump(args.dump, options);
  std::cerr << "done: " << result.pages_indexed << " pages -> "
            << args.index_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wiki-corpus indexing toolkit"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // --- index ---------------------------------------------------------------
  IndexArgs index_args;
  CLI::App* index_cmd =
      app.add_subcommand("index", "build an index from a MediaWiki XML dump");
  index_cmd->add_option("--dump", index_args.dump, "dump file (.xml[.gz|.bz2])")
      ->required();
  index_cmd->add_option("--index", index_args.index_dir, "index directory")
      ->required();
  index_cmd->add_option("--lang", index_args.lang,
                        "language code; en/simple pick the English suffix "
                        "lemmatizer, anything else normalizes only")
      ->required();
  index_cmd->add_option("--max-pages-per-lexeme",
                        index_args.max_pages_per_lexeme,
                        "postings kept per lexeme (default 1000)");
  index_cmd->add_flag("--keep-interwiki", index_args.keep_interwiki,
                      "keep interwiki link text instead of deleting it");
  index_cmd->add_flag("--keep-redirects", index_args.keep_redirects,
                      "index redirect pages too");
  index_cmd->add_option("--namespaces", index_args.namespaces,
                        "namespaces to index, comma separated (default 0)");
  index_cmd->add_option("--max-pages", index_args.max_pages,
                        "stop after this many pages (testing aid)");
  index_cmd->add_option("--threads", index_args.threads,
                        "worker threads (default: available processors)");
  index_cmd->add_option("--template-passes", index_args.template_passes,
                        "template removal sweeps (default 2)");
  index_cmd->add_option("--spill-budget-mb", index_args.spill_budget_mb,
                        "in-memory accumulation budget before spilling");
  index_cmd->add_flag("--overwrite", index_args.overwrite,
                      "replace an existing index directory");
  index_cmd->add_flag("--no-digest", index_args.no_digest,
                      "skip hashing the dump into the manifest");

  // --- query-terms ----------------------------------------------------------
  std::string qt_index, qt_page, qt_format = "tsv", qt_out;
  std::uint64_t qt_top = 10;
  bool qt_normalize = false;
  CLI::App* qt_cmd = app.add_subcommand(
      "query-terms", "terms of one page ordered by TF-IDF weight");
  qt_cmd->add_option("--index", qt_index, "index directory")->required();
  qt_cmd->add_option("--page", qt_page, "page title")->required();
  qt_cmd->add_option("--top", qt_top, "result count (default 10)");
  qt_cmd->add_flag("--normalize-tf", qt_normalize,
                   "divide TF by the page word count");
  qt_cmd->add_option("--format", qt_format, "tsv or jsonl (default tsv)")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  qt_cmd->add_option("--out", qt_out, "write results here instead of stdout");

  // --- query-pages ----------------------------------------------------------
  std::string qp_index, qp_lemmas, qp_format = "tsv", qp_out;
  std::uint64_t qp_top = 10;
  CLI::App* qp_cmd = app.add_subcommand(
      "query-pages", "pages containing every given lemma, by summed TF");
  qp_cmd->add_option("--index", qp_index, "index directory")->required();
  qp_cmd->add_option("--lemmas", qp_lemmas, "comma-separated lemmas")
      ->required();
  qp_cmd->add_option("--top", qp_top, "result count (default 10)");
  qp_cmd->add_option("--format", qp_format, "tsv or jsonl (default tsv)")
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  qp_cmd->add_option("--out", qp_out, "write results here instead of stdout");

  // --- stats ----------------------------------------------------------------
  std::string st_index;
  CLI::App* st_cmd =
      app.add_subcommand("stats", "corpus summary counts of an index");
  st_cmd->add_option("--index", st_index, "index directory")->required();

  // --- compare ---------------------------------------------------------------
  std::string cp_a, cp_b, cp_format = "text";
  CLI::App* cp_cmd = app.add_subcommand(
      "compare", "field-by-field ratios between two index snapshots");
  cp_cmd->add_option("--a", cp_a, "index directory A")->required();
  cp_cmd->add_option("--b", cp_b, "index directory B (divisor)")->required();
  cp_cmd->add_option("--format", cp_format, "text or tsv (default text)")
      ->check(CLI::IsMember({"text", "tsv"}));

  // --- zipf -------------------------------------------------------------------
  std::string zf_index, zf_out, zf_fit = "100,10000";
  std::uint64_t zf_k = 10000;
  bool zf_doc_freq = false;
  CLI::App* zf_cmd = app.add_subcommand(
      "zipf", "rank/frequency plot data with power-law fits");
  zf_cmd->add_option("--index", zf_index, "index directory")->required();
  zf_cmd->add_option("--k", zf_k, "ranks to emit (default 10000)");
  zf_cmd->add_option("--fit", zf_fit,
                     "comma-separated fit ranges (default 100,10000)");
  zf_cmd->add_option("--out", zf_out, "output CSV file")->required();
  zf_cmd->add_flag("--doc-freq", zf_doc_freq,
                   "add a doc_freq column (experimental)");

  // --- top-words ---------------------------------------------------------------
  std::string tw_index, tw_out;
  std::uint64_t tw_n = 1000;
  CLI::App* tw_cmd =
      app.add_subcommand("top-words", "most frequent lemmas of the corpus");
  tw_cmd->add_option("--index", tw_index, "index directory")->required();
  tw_cmd->add_option("--n", tw_n, "word count (default 1000)");
  tw_cmd->add_option("--out", tw_out, "write results here instead of stdout");

  // --- export -----------------------------------------------------------------
  std::string ex_index, ex_out;
  CLI::App* ex_cmd = app.add_subcommand(
      "export", "write term.tsv/page.tsv/term_page.tsv for an index");
  ex_cmd->add_option("--index", ex_index, "index directory")->required();
  ex_cmd->add_option("--out", ex_out, "output directory")->required();

  // --- parse ------------------------------------------------------------------
  std::string pa_in, pa_out;
  bool pa_keep_interwiki = false;
  unsigned pa_passes = 2;
  CLI::App* pa_cmd = app.add_subcommand(
      "parse", "convert a wikitext file to plain text (debugging aid)");
  pa_cmd->add_option("--in", pa_in, "wikitext file")->required();
  pa_cmd->add_flag("--keep-interwiki", pa_keep_interwiki,
                   "keep interwiki link text instead of deleting it");
  pa_cmd->add_option("--template-passes", pa_passes,
                     "template removal sweeps (default 2)");
  pa_cmd->add_option("--out", pa_out, "write results here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*index_cmd) return cmd_index(index_args);

    if (*qt_cmd) {
      const auto index = wikindex::IndexReader::open(qt_index);
      const auto terms = wikindex::doc_term_weights(
          index, wikindex::normalize_title(qt_page), qt_top, qt_normalize);
      emit(qt_format == "jsonl" ? wikindex::weighted_terms_jsonl(terms)
                                : wikindex::weighted_terms_tsv(terms),
           qt_out);
      return kExitOk;
    }

    if (*qp_cmd) {
      const auto index = wikindex::IndexReader::open(qp_index);
      const auto spec = index_lemmatizer(index);
      std::set<std::string> lemmas;
      for (const std::string& word : split_csv(qp_lemmas)) {
        lemmas.insert(wikindex::lemmatize(word, spec));
      }
      if (lemmas.empty()) {
        std::cerr << "error: --lemmas is empty\n";
        return kExitUsage;
      }
      const auto pages = wikindex::pages_for_lemmas(index, lemmas, qp_top);
      emit(qp_format == "jsonl" ? wikindex::ranked_pages_jsonl(pages)
                                : wikindex::ranked_pages_tsv(pages),
           qp_out);
      return kExitOk;
    }

    if (*st_cmd) {
      const auto index = wikindex::IndexReader::open(st_index);
      const auto stats = wikindex::corpus_summary(index);
      std::cout << "articles\t" << stats.articles << "\n"
                << "lexemes\t" << stats.lexemes << "\n"
                << "total_words\t" << stats.total_words << "\n"
                << "relations\t" << stats.relations << "\n";
      return kExitOk;
    }

    if (*cp_cmd) {
      const auto a = wikindex::corpus_summary(wikindex::IndexReader::open(cp_a));
      const auto b = wikindex::corpus_summary(wikindex::IndexReader::open(cp_b));
      const auto rows = wikindex::compare_snapshots(a, b);
      std::cout << (cp_format == "tsv" ? wikindex::comparison_tsv(rows)
                                       : wikindex::comparison_text(rows));
      return kExitOk;
    }

    if (*zf_cmd) {
      const auto index = wikindex::IndexReader::open(zf_index);
      std::vector<std::uint64_t> ranges;
      for (const std::string& r : split_csv(zf_fit)) {
        ranges.push_back(static_cast<std::uint64_t>(parse_int(r, "--fit")));
      }
      wikindex::emit_plot_data(index, zf_k, ranges, zf_out, zf_doc_freq);
      std::cerr << "wrote " << zf_out << "\n";
      return kExitOk;
    }

    if (*tw_cmd) {
      const auto index = wikindex::IndexReader::open(tw_index);
      std::string out = "rank\tlemma\tcorpus_freq\n";
      std::uint64_t rank = 1;
      for (const auto& [lemma, freq] : wikindex::top_words(index, tw_n)) {
        out += std::to_string(rank++) + "\t" + lemma + "\t" +
               std::to_string(freq) + "\n";
      }
      emit(out, tw_out);
      return kExitOk;
    }

    if (*ex_cmd) {
      const auto index = wikindex::IndexReader::open(ex_index);
      wikindex::export_tsv(index, ex_out);
      std::cerr << "wrote term.tsv, page.tsv, term_page.tsv to " << ex_out
                << "\n";
      return kExitOk;
    }

    if (*pa_cmd) {
      wikindex::ParserConfig config;
      config.remove_not_expand_iwiki = !pa_keep_interwiki;
      config.template_passes = pa_passes;
      std::string text = wikindex::convert(read_text_file(pa_in), config);
      text += '\n';
      emit(text, pa_out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const wikindex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
