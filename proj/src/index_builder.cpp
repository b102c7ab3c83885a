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

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <queue>

#include "store_format.hpp"
#include "wikindex/errors.hpp"
#include "wikindex/index.hpp"

#include "json.hpp"

namespace wikindex {

namespace fs = std::filesystem;

std::string lemmatizer_kind_name(LemmatizerKind kind) {
  switch (kind) {
    case LemmatizerKind::kNormalizeOnly:
      return "normalize-only";
    case LemmatizerKind::kEnglishSuffix:
      return "english-suffix";
    case LemmatizerKind::kExternal:
      return "external";
  }
  return "normalize-only";
}

std::string normalize_title(std::string_view title) {
  std::string out(title);
  for (char& c : out) {
    if (c == ' ') c = '_';
  }
  return out;
}

namespace detail {

void write_manifest(const fs::path& file, const IndexManifest& manifest) {
  nlohmann::json j;
  j["format_version"] = manifest.format_version;
  j["lemmatizer_kind"] = manifest.lemmatizer_kind;
  j["language"] = manifest.language;
  j["max_pages_per_lexeme"] = manifest.max_pages_per_lexeme;
  j["source_digest"] = manifest.source_digest;
  j["articles"] = manifest.articles;
  j["lexemes"] = manifest.lexemes;
  j["relations"] = manifest.relations;
  j["total_words"] = manifest.total_words;
  std::ofstream out(file, std::ios::binary);
  if (!out) throw StoreIoError("cannot write " + file.string());
  out << j.dump(2) << '\n';
  if (!out) throw StoreIoError("failed writing " + file.string());
}

IndexManifest read_manifest(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw StoreIoError("cannot read " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw StoreIoError("bad manifest " + file.string() + ": " + e.what());
  }
  IndexManifest m;
  m.format_version = j.value("format_version", 0);
  m.lemmatizer_kind = j.value("lemmatizer_kind", "normalize-only");
  m.language = j.value("language", "und");
  m.max_pages_per_lexeme = j.value("max_pages_per_lexeme", 1000ull);
  m.source_digest = j.value("source_digest", "");
  m.articles = j.value("articles", 0ull);
  m.lexemes = j.value("lexemes", 0ull);
  m.relations = j.value("relations", 0ull);
  m.total_words = j.value("total_words", 0ull);
  return m;
}

}  // namespace detail

namespace {

struct RunRow {
  std::string lemma;
  std::uint64_t page_id;
  std::uint64_t count;
};

class RunWriter {
 public:
  explicit RunWriter(const fs::path& path)
      : file_(std::fopen(path.string().c_str(), "wb")) {
    if (!file_) throw StoreIoError("cannot create run file " + path.string());
  }
  ~RunWriter() {
    if (file_) std::fclose(file_);
  }

  void write(const RunRow& row) {
    const std::uint32_t len = static_cast<std::uint32_t>(row.lemma.size());
    ok_ &= std::fwrite(&len, sizeof len, 1, file_) == 1;
    ok_ &= row.lemma.empty() ||
           std::fwrite(row.lemma.data(), row.lemma.size(), 1, file_) == 1;
    ok_ &= std::fwrite(&row.page_id, sizeof row.page_id, 1, file_) == 1;
    ok_ &= std::fwrite(&row.count, sizeof row.count, 1, file_) == 1;
  }

  void close() {
    if (file_) {
      ok_ &= std::fclose(file_) == 0;
      file_ = nullptr;
    }
    if (!ok_) throw StoreIoError("failed writing spill run");
  }

 private:
  std::FILE* file_;
  bool ok_ = true;
};

class RunReader {
 public:
  explicit RunReader(const fs::path& path)
      : file_(std::fopen(path.string().c_str(), "rb")) {
    if (!file_) throw StoreIoError("cannot open run file " + path.string());
    advance();
  }
  ~RunReader() {
    if (file_) std::fclose(file_);
  }

  bool ok() const { return ok_; }
  const RunRow& row() const { return row_; }

  void advance() {
    std::uint32_t len;
    if (std::fread(&len, sizeof len, 1, file_) != 1) {
      ok_ = false;
      return;
    }
    row_.lemma.resize(len);
    if (len > 0 && std::fread(row_.lemma.data(), len, 1, file_) != 1) {
      throw StoreIoError("truncated spill run");
    }
    if (std::fread(&row_.page_id, sizeof row_.page_id, 1, file_) != 1 ||
        std::fread(&row_.count, sizeof row_.count, 1, file_) != 1) {
      throw StoreIoError("truncated spill run");
    }
  }

 private:
  std::FILE* file_;
  RunRow row_;
  bool ok_ = true;
};

class BufferedFile {
 public:
  explicit BufferedFile(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw StoreIoError("cannot create " + path.string());
  }

  void append(std::string_view data) {
    buf_ += data;
    if (buf_.size() > (1 << 20)) flush();
  }

  std::string& buffer() { return buf_; }

  void maybe_flush() {
    if (buf_.size() > (1 << 20)) flush();
  }

  void close() {
    flush();
    out_.close();
    if (!out_) throw StoreIoError("failed writing " + path_.string());
  }

 private:
  void flush() {
    out_.write(buf_.data(), static_cast<std::streamsize>(buf_.size()));
    if (!out_) throw StoreIoError("failed writing " + path_.string());
    buf_.clear();
  }

  fs::path path_;
  std::ofstream out_;
  std::string buf_;
};

}  // namespace

IndexBuilder::IndexBuilder(IndexConfig config, LemmatizerSpec spec)
    : config_(std::move(config)), spec_(std::move(spec)) {
  if (config_.max_pages_per_lexeme < 1) {
    throw Error("max_pages_per_lexeme must be >= 1");
  }
  if (config_.store_path.empty()) throw Error("store_path is empty");
  if (fs::exists(config_.store_path) && !config_.overwrite) {
    throw StoreAlreadyExists("index already exists: " +
                             config_.store_path.string());
  }
  lock_path_ = config_.store_path;
  lock_path_ += ".lock";
  {
    // O_EXCL-style lock: creation fails if a build is already running.
    std::FILE* lock = nullptr;
    if (!fs::exists(lock_path_)) {
      lock = std::fopen(lock_path_.string().c_str(), "wbx");
    }
    if (!lock) {
      throw StoreLocked("another build holds " + lock_path_.string());
    }
    std::fclose(lock);
  }
  tmp_dir_ = config_.store_path;
  tmp_dir_ += ".tmp";
  std::error_code ec;
  fs::remove_all(tmp_dir_, ec);
  if (!fs::create_directories(tmp_dir_)) {
    fs::remove(lock_path_, ec);
    throw StoreIoError("cannot create " + tmp_dir_.string());
  }
}

IndexBuilder::~IndexBuilder() {
  if (!finalized_) {
    std::error_code ec;
    fs::remove_all(tmp_dir_, ec);
    fs::remove(lock_path_, ec);
  }
}

void IndexBuilder::set_source_digest(std::string digest) {
  source_digest_ = std::move(digest);
}

void IndexBuilder::add_document(const PlainDoc& doc) {
  add_document(doc, lemma_frequencies(doc.text, spec_));
}

void IndexBuilder::add_document(const PlainDoc& doc,
                                const LemmaFreqList& freqs) {
  if (finalized_) throw Error("builder already finalized");
  PageRecord page;
  page.page_id = doc.page_id;
  page.page_title = normalize_title(doc.title);
  page.word_count = doc.word_count;
  if (!seen_titles_.insert(page.page_title).second) {
    throw DuplicateTitle("duplicate page title: " + page.page_title);
  }
  if (!seen_ids_.insert(page.page_id).second) {
    throw Error("duplicate page_id: " + std::to_string(page.page_id));
  }
  for (const auto& [lemma, count] : freqs.entries) {
    rows_bytes_ += lemma.size() + sizeof(Row) + 16;
    rows_.push_back(Row{lemma, page.page_id, count});
  }
  pages_.push_back(std::move(page));
  if (rows_bytes_ >= config_.spill_budget_bytes) spill();
}

void IndexBuilder::spill() {
  if (rows_.empty()) return;
  std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) {
    if (a.lemma != b.lemma) return a.lemma < b.lemma;
    return a.page_id < b.page_id;
  });
  const fs::path run =
      tmp_dir_ / ("run_" + std::to_string(run_files_.size()) + ".bin");
  RunWriter writer(run);
  for (const Row& row : rows_) {
    writer.write(RunRow{row.lemma, row.page_id, row.count});
  }
  writer.close();
  run_files_.push_back(run);
  rows_.clear();
  rows_.shrink_to_fit();
  rows_bytes_ = 0;
}

void IndexBuilder::finalize() {
  if (finalized_) throw Error("builder already finalized");
  write_store();
  std::error_code ec;
  if (fs::exists(config_.store_path)) {
    fs::remove_all(config_.store_path, ec);
    if (ec) throw StoreIoError("cannot replace " + config_.store_path.string());
  }
  fs::rename(tmp_dir_, config_.store_path, ec);
  if (ec) {
    throw StoreIoError("cannot move index into place: " + ec.message());
  }
  finalized_ = true;
  fs::remove(lock_path_, ec);
}

void IndexBuilder::write_store() {
  spill();  // remaining in-memory rows become the last run

  BufferedFile term_out(tmp_dir_ / detail::kTermFile);
  BufferedFile term_page_out(tmp_dir_ / detail::kTermPageFile);
  term_out.append(detail::kTermHeader);
  term_page_out.append(detail::kTermPageHeader);

  // K-way merge of the sorted runs, grouping rows per lemma.
  struct HeapEntry {
    std::size_t run;
  };
  std::vector<std::unique_ptr<RunReader>> readers;
  for (const fs::path& run : run_files_) {
    auto reader = std::make_unique<RunReader>(run);
    if (reader->ok()) readers.push_back(std::move(reader));
  }
  auto worse = [&](const HeapEntry& a, const HeapEntry& b) {
    const RunRow& ra = readers[a.run]->row();
    const RunRow& rb = readers[b.run]->row();
    if (ra.lemma != rb.lemma) return ra.lemma > rb.lemma;
    return ra.page_id > rb.page_id;
  };
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, decltype(worse)> heap(
      worse);
  for (std::size_t i = 0; i < readers.size(); ++i) heap.push({i});

  IndexManifest manifest;
  manifest.lemmatizer_kind = lemmatizer_kind_name(spec_.kind);
  manifest.language = spec_.language;
  manifest.max_pages_per_lexeme = config_.max_pages_per_lexeme;
  manifest.source_digest = source_digest_;

  // Per-lemma postings selection: keep the cap best by (term_freq desc,
  // page_id asc). The heap holds the currently worst kept row on top.
  const std::uint64_t cap = config_.max_pages_per_lexeme;
  auto posting_better = [](const TermPageRecord& a, const TermPageRecord& b) {
    if (a.term_freq != b.term_freq) return a.term_freq > b.term_freq;
    return a.page_id < b.page_id;
  };
  std::priority_queue<TermPageRecord, std::vector<TermPageRecord>,
                      decltype(posting_better)>
      kept(posting_better);

  std::string current_lemma;
  TermRecord term;
  std::uint64_t next_term_id = 1;

  auto flush_lemma = [&]() {
    if (term.doc_freq == 0) return;
    term.term_id = next_term_id++;
    term.lemma = current_lemma;
    detail::append_term_row(term_out.buffer(), term);
    term_out.maybe_flush();
    std::vector<TermPageRecord> rows;
    rows.reserve(kept.size());
    while (!kept.empty()) {
      rows.push_back(kept.top());
      kept.pop();
    }
    std::sort(rows.begin(), rows.end(),
              [](const TermPageRecord& a, const TermPageRecord& b) {
                return a.page_id < b.page_id;
              });
    for (TermPageRecord& row : rows) {
      row.term_id = term.term_id;
      detail::append_term_page_row(term_page_out.buffer(), row);
      manifest.relations++;
    }
    term_page_out.maybe_flush();
    manifest.lexemes++;
    manifest.total_words += term.corpus_freq;
    term = TermRecord{};
  };

  while (!heap.empty()) {
    const std::size_t run = heap.top().run;
    heap.pop();
    const RunRow& row = readers[run]->row();
    if (row.lemma != current_lemma) {
      flush_lemma();
      current_lemma = row.lemma;
    }
    term.doc_freq++;
    term.corpus_freq += row.count;
    TermPageRecord posting{0, row.page_id, row.count};
    if (kept.size() < cap) {
      kept.push(posting);
    } else if (posting_better(posting, kept.top())) {
      kept.pop();
      kept.push(posting);
    }
    readers[run]->advance();
    if (readers[run]->ok()) heap.push({run});
  }
  flush_lemma();

  term_out.close();
  term_page_out.close();

  // Page table, sorted by page_id.
  std::sort(pages_.begin(), pages_.end(),
            [](const PageRecord& a, const PageRecord& b) {
              return a.page_id < b.page_id;
            });
  BufferedFile page_out(tmp_dir_ / detail::kPageFile);
  page_out.append(detail::kPageHeader);
  for (const PageRecord& page : pages_) {
    detail::append_page_row(page_out.buffer(), page);
    page_out.maybe_flush();
  }
  page_out.close();

  manifest.articles = pages_.size();
  detail::write_manifest(tmp_dir_ / detail::kManifestFile, manifest);

  // Spill runs are inside tmp_dir_ and must not ship with the store.
  for (const fs::path& run : run_files_) {
    std::error_code ec;
    fs::remove(run, ec);
  }
  run_files_.clear();
}

IndexReader build_index(
    const std::function<std::optional<PlainDoc>()>& provider,
    const LemmatizerSpec& spec, const IndexConfig& config) {
  IndexBuilder builder(config, spec);
  while (auto doc = provider()) {
    builder.add_document(*doc);
  }
  builder.finalize();
  return IndexReader::open(config.store_path);
}

}  // namespace wikindex
