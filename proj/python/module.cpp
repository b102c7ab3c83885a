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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "wikindex/dump.hpp"
#include "wikindex/errors.hpp"
#include "wikindex/index.hpp"
#include "wikindex/lemmatizer.hpp"
#include "wikindex/pipeline.hpp"
#include "wikindex/query.hpp"
#include "wikindex/stats.hpp"
#include "wikindex/wikitext.hpp"

namespace py = pybind11;
using namespace wikindex;

namespace {

LemmatizerSpec make_spec(const std::string& lang,
                         const std::optional<py::function>& external) {
  if (external) {
    LemmatizerSpec spec;
    spec.kind = LemmatizerKind::kExternal;
    spec.language = lang;
    py::function fn = *external;
    spec.external_fn = [fn](std::string_view surface) {
      py::gil_scoped_acquire gil;
      return fn(std::string(surface)).cast<std::string>();
    };
    return spec;
  }
  return LemmatizerSpec::for_language(lang);
}

ParserConfig make_parser_config(bool keep_interwiki, unsigned template_passes) {
  ParserConfig config;
  config.remove_not_expand_iwiki = !keep_interwiki;
  config.template_passes = template_passes;
  return config;
}

}  // namespace

PYBIND11_MODULE(_wikindex, m) {
  m.doc() = "wiki-corpus indexing toolkit: wikitext conversion, inverted "
            "index construction, TF-IDF queries and corpus statistics";

  // Base first: translators run newest-first, so the derived exceptions
  // must be registered after their base to take precedence.
  py::register_exception<Error>(m, "WikindexError");
  py::register_exception<UnknownPage>(m, "UnknownPageError");
  py::register_exception<UnknownLemma>(m, "UnknownLemmaError");

  // --- wikitext ------------------------------------------------------------
  m.def(
      "convert",
      [](const std::string& wikitext, bool keep_interwiki,
         unsigned template_passes) {
        return convert(wikitext,
                       make_parser_config(keep_interwiki, template_passes));
      },
      py::arg("wikitext"), py::arg("keep_interwiki") = false,
      py::arg("template_passes") = 2,
      "Strip wiki markup and return plain text.");

  // --- lemmatizer ----------------------------------------------------------
  py::class_<Token>(m, "Token")
      .def_readonly("surface", &Token::surface)
      .def_readonly("offset", &Token::offset)
      .def_readonly("has_letter", &Token::has_letter)
      .def("__repr__", [](const Token& t) {
        return "Token('" + t.surface + "', " + std::to_string(t.offset) + ")";
      });

  m.def("tokenize", [](const std::string& text) { return tokenize(text); },
        py::arg("text"));
  m.def(
      "lemmatize",
      [](const std::string& surface, const std::string& lang,
         const std::optional<py::function>& external) {
        return lemmatize(surface, make_spec(lang, external));
      },
      py::arg("surface"), py::arg("lang") = "en",
      py::arg("external") = std::nullopt);
  m.def(
      "lemma_frequencies",
      [](const std::string& text, const std::string& lang,
         const std::optional<py::function>& external) {
        const auto list = lemma_frequencies(text, make_spec(lang, external));
        return py::make_tuple(list.entries, list.total_tokens);
      },
      py::arg("text"), py::arg("lang") = "en",
      py::arg("external") = std::nullopt,
      "Returns (dict lemma -> count, total token count).");

  // --- dump ingest -----------------------------------------------------------
  py::class_<RawPage>(m, "RawPage")
      .def_readonly("page_id", &RawPage::page_id)
      .def_readonly("title", &RawPage::title)
      .def_readonly("namespace_id", &RawPage::namespace_id)
      .def_readonly("wikitext", &RawPage::wikitext);

  m.def(
      "read_dump",
      [](const std::filesystem::path& path, std::vector<int> namespaces,
         bool skip_redirects, std::optional<std::uint64_t> max_pages) {
        IngestConfig config;
        config.namespaces_kept.clear();
        config.namespaces_kept.insert(namespaces.begin(), namespaces.end());
        config.skip_redirects = skip_redirects;
        config.max_pages = max_pages;
        DumpReader reader(path, std::move(config));
        std::vector<RawPage> pages;
        while (auto page = reader.next()) pages.push_back(std::move(*page));
        return pages;
      },
      py::arg("path"), py::arg("namespaces") = std::vector<int>{0},
      py::arg("skip_redirects") = true, py::arg("max_pages") = std::nullopt,
      "Read every indexable page of a dump into a list.");

  // --- index build -----------------------------------------------------------
  m.def(
      "build_index",
      [](const std::filesystem::path& dump, const std::filesystem::path& index,
         const std::string& lang, std::uint64_t max_pages_per_lexeme,
         bool keep_interwiki, unsigned threads, bool overwrite,
         std::optional<std::uint64_t> max_pages) {
        PipelineOptions options;
        options.lemmatizer = LemmatizerSpec::for_language(lang);
        options.parser = make_parser_config(keep_interwiki, 2);
        options.index.store_path = index;
        options.index.max_pages_per_lexeme = max_pages_per_lexeme;
        options.index.overwrite = overwrite;
        options.ingest.max_pages = max_pages;
        options.threads = threads;
        py::gil_scoped_release release;
        return index_dump(dump, options).pages_indexed;
      },
      py::arg("dump"), py::arg("index"), py::arg("lang") = "en",
      py::arg("max_pages_per_lexeme") = 1000,
      py::arg("keep_interwiki") = false, py::arg("threads") = 1,
      py::arg("overwrite") = false, py::arg("max_pages") = std::nullopt,
      "Index a MediaWiki XML dump; returns the number of pages indexed.");

  // --- index read / query ------------------------------------------------------
  py::class_<TermRecord>(m, "TermRecord")
      .def_readonly("term_id", &TermRecord::term_id)
      .def_readonly("lemma", &TermRecord::lemma)
      .def_readonly("doc_freq", &TermRecord::doc_freq)
      .def_readonly("corpus_freq", &TermRecord::corpus_freq);

  py::class_<PageRecord>(m, "PageRecord")
      .def_readonly("page_id", &PageRecord::page_id)
      .def_readonly("page_title", &PageRecord::page_title)
      .def_readonly("word_count", &PageRecord::word_count);

  py::class_<TermPageRecord>(m, "TermPageRecord")
      .def_readonly("term_id", &TermPageRecord::term_id)
      .def_readonly("page_id", &TermPageRecord::page_id)
      .def_readonly("term_freq", &TermPageRecord::term_freq);

  py::class_<WeightedTerm>(m, "WeightedTerm")
      .def_readonly("lemma", &WeightedTerm::lemma)
      .def_readonly("tf", &WeightedTerm::tf)
      .def_readonly("idf", &WeightedTerm::idf)
      .def_readonly("weight", &WeightedTerm::weight);

  py::class_<RankedPage>(m, "RankedPage")
      .def_readonly("page_title", &RankedPage::page_title)
      .def_readonly("sum_tf", &RankedPage::sum_tf)
      .def_readonly("n_words", &RankedPage::n_words);

  py::class_<CorpusStats>(m, "CorpusStats")
      .def(py::init<>())
      .def_readwrite("articles", &CorpusStats::articles)
      .def_readwrite("lexemes", &CorpusStats::lexemes)
      .def_readwrite("total_words", &CorpusStats::total_words)
      .def_readwrite("relations", &CorpusStats::relations);

  py::class_<PowerLawFit>(m, "PowerLawFit")
      .def_readonly("slope", &PowerLawFit::slope)
      .def_readonly("intercept", &PowerLawFit::intercept)
      .def_readonly("k", &PowerLawFit::k)
      .def_readonly("residual", &PowerLawFit::residual);

  py::class_<IndexReader>(m, "Index")
      .def_static("open", &IndexReader::open, py::arg("path"))
      .def("term", &IndexReader::term_lookup, py::arg("lemma"))
      .def("postings", &IndexReader::postings, py::arg("term_id"))
      .def("doc_terms", &IndexReader::doc_terms, py::arg("page_id"))
      .def("pages", &IndexReader::pages)
      .def("terms", &IndexReader::terms)
      .def(
          "idf",
          [](const IndexReader& index, const std::string& lemma) {
            return idf(index, lemma);
          },
          py::arg("lemma"))
      .def(
          "doc_term_weights",
          [](const IndexReader& index, const std::string& title,
             std::uint64_t top_k, bool normalize_tf) {
            return doc_term_weights(index, normalize_title(title), top_k,
                                    normalize_tf);
          },
          py::arg("page_title"), py::arg("top_k") = 10,
          py::arg("normalize_tf") = false)
      .def(
          "pages_for_lemmas",
          [](const IndexReader& index, const std::set<std::string>& lemmas,
             std::uint64_t top_k) {
            return pages_for_lemmas(index, lemmas, top_k);
          },
          py::arg("lemmas"), py::arg("top_k") = 10)
      .def("stats",
           [](const IndexReader& index) { return corpus_summary(index); })
      .def(
          "rank_frequencies",
          [](const IndexReader& index, std::uint64_t k) {
            return rank_frequencies(index, k);
          },
          py::arg("k"))
      .def(
          "top_words",
          [](const IndexReader& index, std::uint64_t n) {
            return top_words(index, n);
          },
          py::arg("n") = 1000)
      .def(
          "emit_plot_data",
          [](const IndexReader& index, std::uint64_t k,
             const std::vector<std::uint64_t>& fit_ranges,
             const std::filesystem::path& out, bool include_doc_freq) {
            emit_plot_data(index, k, fit_ranges, out, include_doc_freq);
          },
          py::arg("k"), py::arg("fit_ranges"), py::arg("out"),
          py::arg("include_doc_freq") = false)
      .def(
          "export_tsv",
          [](const IndexReader& index, const std::filesystem::path& out) {
            export_tsv(index, out);
          },
          py::arg("out_dir"));

  // --- stats ---------------------------------------------------------------
  m.def(
      "fit_power_law",
      [](const std::vector<double>& freqs, std::uint64_t k) {
        return fit_power_law(std::span<const double>(freqs), k);
      },
      py::arg("freqs"), py::arg("k"),
      "Least-squares fit of ln(freq) against ln(rank) over ranks 1..k.");
  m.def(
      "compare_snapshots",
      [](const CorpusStats& a, const CorpusStats& b) {
        py::list rows;
        for (const auto& row : compare_snapshots(a, b)) {
          py::dict d;
          d["field"] = row.field;
          d["a"] = row.value_a;
          d["b"] = row.value_b;
          d["ratio"] = row.ratio ? py::cast(*row.ratio) : py::none();
          d["percent"] = row.percent ? py::cast(*row.percent) : py::none();
          rows.append(d);
        }
        return rows;
      },
      py::arg("a"), py::arg("b"));
}
