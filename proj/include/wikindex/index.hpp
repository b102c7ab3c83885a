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

#ifndef WIKINDEX_INDEX_HPP
#define WIKINDEX_INDEX_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikindex/lemmatizer.hpp"
#include "wikindex/wikitext.hpp"

namespace wikindex {

/// Row of the term table: one lexeme with its corpus-wide counts.
/// doc_freq is the true number of documents containing the lexeme, never
/// clipped by the postings cap.
struct TermRecord {
  std::uint64_t term_id = 0;
  std::string lemma;
  std::uint64_t doc_freq = 0;
  std::uint64_t corpus_freq = 0;
};

/// Row of the page table. Titles are stored in MediaWiki database form
/// (spaces replaced by underscores) and are unique.
struct PageRecord {
  std::uint64_t page_id = 0;
  std::string page_title;
  std::uint64_t word_count = 0;
};

/// Row of the term_page table: term frequency of one lexeme in one page.
struct TermPageRecord {
  std::uint64_t term_id = 0;
  std::uint64_t page_id = 0;
  std::uint64_t term_freq = 0;
};

struct IndexConfig {
  std::uint64_t max_pages_per_lexeme = 1000;
  std::filesystem::path store_path;
  bool overwrite = false;
  /// Rough in-memory budget for term accumulation before a sorted run is
  /// spilled to disk.
  std::uint64_t spill_budget_bytes = 256ull << 20;
};

struct IndexManifest {
  int format_version = 1;
  std::string lemmatizer_kind;
  std::string language;
  std::uint64_t max_pages_per_lexeme = 1000;
  std::string source_digest;  // "sha256:<hex>" of the dump file, if known
  std::uint64_t articles = 0;
  std::uint64_t lexemes = 0;
  std::uint64_t relations = 0;
  std::uint64_t total_words = 0;
};

std::string lemmatizer_kind_name(LemmatizerKind kind);

/// Read-only view of a finished index. Immutable once opened; safe to share
/// across threads.
class IndexReader {
 public:
  static IndexReader open(const std::filesystem::path& store_path);

  const IndexManifest& manifest() const { return manifest_; }
  const std::vector<TermRecord>& terms() const { return terms_; }
  const std::vector<PageRecord>& pages() const { return pages_; }
  const std::vector<TermPageRecord>& relations() const { return relations_; }

  std::optional<TermRecord> term_lookup(std::string_view lemma) const;
  const PageRecord* page_by_title(std::string_view title) const;
  const PageRecord* page_by_id(std::uint64_t page_id) const;

  /// Stored postings of a term, ordered by term_freq descending then
  /// page_id ascending. Unknown term ids yield an empty sequence.
  std::vector<TermPageRecord> postings(std::uint64_t term_id) const;

  /// Stored (lemma, term_freq) rows of one page, ordered by term_freq
  /// descending then lemma ascending. Throws UnknownPage.
  std::vector<std::pair<std::string, std::uint64_t>> doc_terms(
      std::uint64_t page_id) const;

 private:
  IndexReader() = default;
  void build_lookup_tables();
  const std::vector<std::pair<std::uint32_t, std::uint64_t>>& page_rows(
      std::size_t page_idx) const;

  // Inverse (page -> rows) mapping, built on first use; kept behind a
  // pointer so the reader stays movable despite the once_flag.
  struct Inverse {
    std::once_flag once;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> rows;
  };

  IndexManifest manifest_;
  std::vector<TermRecord> terms_;
  std::vector<PageRecord> pages_;
  std::vector<TermPageRecord> relations_;  // sorted by (term_id, page_id)
  std::vector<std::size_t> term_offsets_;  // into relations_, size T+1
  std::unordered_map<std::string_view, std::size_t> lemma_to_term_;
  std::unordered_map<std::string_view, std::size_t> title_to_page_;
  std::unordered_map<std::uint64_t, std::size_t> id_to_page_;
  std::unique_ptr<Inverse> inverse_ = std::make_unique<Inverse>();
};

/// Single-writer builder. Creates `<store_path>.lock` for its lifetime and
/// assembles the store in a temporary directory that is atomically renamed
/// into place by finalize(); an abandoned build leaves no readable index.
class IndexBuilder {
 public:
  IndexBuilder(IndexConfig config, LemmatizerSpec spec);
  ~IndexBuilder();

  IndexBuilder(const IndexBuilder&) = delete;
  IndexBuilder& operator=(const IndexBuilder&) = delete;

  /// Adds a document, lemmatizing its text.
  void add_document(const PlainDoc& doc);
  /// Adds a document with lemma frequencies already computed (the parallel
  /// pipeline lemmatizes on worker threads).
  void add_document(const PlainDoc& doc, const LemmaFreqList& freqs);

  void set_source_digest(std::string digest);

  /// Merges spilled runs, applies the postings cap, writes the store and
  /// renames it into place. The builder is unusable afterwards.
  void finalize();

 private:
  struct Row {
    std::string lemma;
    std::uint64_t page_id;
    std::uint64_t count;
  };

  void spill();
  void write_store();

  IndexConfig config_;
  LemmatizerSpec spec_;
  std::filesystem::path tmp_dir_;
  std::filesystem::path lock_path_;
  bool finalized_ = false;

  std::vector<PageRecord> pages_;
  std::unordered_set<std::string> seen_titles_;
  std::unordered_set<std::uint64_t> seen_ids_;
  std::vector<Row> rows_;
  std::uint64_t rows_bytes_ = 0;
  std::vector<std::filesystem::path> run_files_;
  std::string source_digest_;
};

/// Drains `provider` (nullopt ends the stream) into a new index at
/// config.store_path and opens it.
IndexReader build_index(
    const std::function<std::optional<PlainDoc>()>& provider,
    const LemmatizerSpec& spec, const IndexConfig& config);

/// Writes term.tsv, page.tsv and term_page.tsv into out_dir; byte-identical
/// for identical index contents.
void export_tsv(const IndexReader& index, const std::filesystem::path& out_dir);

/// MediaWiki database form of a title: spaces become underscores.
std::string normalize_title(std::string_view title);

}  // namespace wikindex

#endif  // WIKINDEX_INDEX_HPP
