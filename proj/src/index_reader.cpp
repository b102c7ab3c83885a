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
#include <charconv>
#include <fstream>

#include "store_format.hpp"
#include "wikindex/errors.hpp"
#include "wikindex/index.hpp"

namespace wikindex {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreIoError("cannot read " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return data;
}

std::uint64_t parse_u64(std::string_view field, const fs::path& file) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw StoreIoError("bad number '" + std::string(field) + "' in " +
                       file.string());
  }
  return value;
}

/// Calls `fn(fields)` for every data line; checks the header line.
template <typename Fn>
void for_each_row(const fs::path& file, std::string_view expected_header,
                  unsigned n_fields, Fn&& fn) {
  const std::string data = read_file(file);
  std::size_t pos = 0;
  bool first = true;
  std::vector<std::string_view> fields;
  while (pos < data.size()) {
    std::size_t eol = data.find('\n', pos);
    if (eol == std::string::npos) eol = data.size();
    const std::string_view line(data.data() + pos, eol - pos);
    pos = eol + 1;
    if (first) {
      if (std::string(line) + "\n" != expected_header) {
        throw StoreIoError("unexpected header in " + file.string());
      }
      first = false;
      continue;
    }
    if (line.empty()) continue;
    fields.clear();
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != n_fields) {
      throw StoreIoError("bad row in " + file.string());
    }
    fn(fields);
  }
  if (first) throw StoreIoError("empty table file " + file.string());
}

}  // namespace

IndexReader IndexReader::open(const fs::path& store_path) {
  fs::path lock = store_path;
  lock += ".lock";
  if (fs::exists(lock)) {
    throw StoreLocked("index is being built: " + lock.string());
  }
  if (!fs::exists(store_path / detail::kManifestFile)) {
    throw StoreIoError("not an index directory: " + store_path.string());
  }
  IndexReader reader;
  reader.manifest_ = detail::read_manifest(store_path / detail::kManifestFile);
  if (reader.manifest_.format_version != 1) {
    throw StoreIoError("unsupported index format version " +
                       std::to_string(reader.manifest_.format_version));
  }

  const fs::path term_file = store_path / detail::kTermFile;
  for_each_row(term_file, detail::kTermHeader, 4, [&](const auto& f) {
    TermRecord t;
    t.term_id = parse_u64(f[0], term_file);
    t.lemma = std::string(f[1]);
    t.doc_freq = parse_u64(f[2], term_file);
    t.corpus_freq = parse_u64(f[3], term_file);
    reader.terms_.push_back(std::move(t));
  });

  const fs::path page_file = store_path / detail::kPageFile;
  for_each_row(page_file, detail::kPageHeader, 3, [&](const auto& f) {
    PageRecord p;
    p.page_id = parse_u64(f[0], page_file);
    p.page_title = std::string(f[1]);
    p.word_count = parse_u64(f[2], page_file);
    reader.pages_.push_back(std::move(p));
  });

  const fs::path rel_file = store_path / detail::kTermPageFile;
  for_each_row(rel_file, detail::kTermPageHeader, 3, [&](const auto& f) {
    TermPageRecord r;
    r.term_id = parse_u64(f[0], rel_file);
    r.page_id = parse_u64(f[1], rel_file);
    r.term_freq = parse_u64(f[2], rel_file);
    reader.relations_.push_back(r);
  });

  reader.build_lookup_tables();
  return reader;
}

void IndexReader::build_lookup_tables() {
  lemma_to_term_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].term_id != i + 1) {
      throw StoreIoError("term ids are not dense and sorted");
    }
    lemma_to_term_.emplace(terms_[i].lemma, i);
  }
  title_to_page_.reserve(pages_.size());
  id_to_page_.reserve(pages_.size());
  for (std::size_t i = 0; i < pages_.size(); ++i) {
    title_to_page_.emplace(pages_[i].page_title, i);
    id_to_page_.emplace(pages_[i].page_id, i);
  }
  term_offsets_.assign(terms_.size() + 1, 0);
  for (const TermPageRecord& r : relations_) {
    if (r.term_id == 0 || r.term_id > terms_.size()) {
      throw StoreIoError("term_page row references unknown term");
    }
    term_offsets_[r.term_id]++;
  }
  for (std::size_t i = 1; i < term_offsets_.size(); ++i) {
    term_offsets_[i] += term_offsets_[i - 1];
  }
  // relations_ is stored sorted by (term_id, page_id), so offsets line up.
  for (std::size_t i = 1; i < relations_.size(); ++i) {
    const auto& a = relations_[i - 1];
    const auto& b = relations_[i];
    if (a.term_id > b.term_id ||
        (a.term_id == b.term_id && a.page_id >= b.page_id)) {
      throw StoreIoError("term_page table is not sorted");
    }
  }
}

std::optional<TermRecord> IndexReader::term_lookup(
    std::string_view lemma) const {
  const auto it = lemma_to_term_.find(lemma);
  if (it == lemma_to_term_.end()) return std::nullopt;
  return terms_[it->second];
}

const PageRecord* IndexReader::page_by_title(std::string_view title) const {
  const auto it = title_to_page_.find(title);
  return it == title_to_page_.end() ? nullptr : &pages_[it->second];
}

const PageRecord* IndexReader::page_by_id(std::uint64_t page_id) const {
  const auto it = id_to_page_.find(page_id);
  return it == id_to_page_.end() ? nullptr : &pages_[it->second];
}

std::vector<TermPageRecord> IndexReader::postings(std::uint64_t term_id) const {
  if (term_id == 0 || term_id > terms_.size()) return {};
  std::vector<TermPageRecord> rows(
      relations_.begin() + term_offsets_[term_id - 1],
      relations_.begin() + term_offsets_[term_id]);
  std::sort(rows.begin(), rows.end(),
            [](const TermPageRecord& a, const TermPageRecord& b) {
              if (a.term_freq != b.term_freq) return a.term_freq > b.term_freq;
              return a.page_id < b.page_id;
            });
  return rows;
}

const std::vector<std::pair<std::uint32_t, std::uint64_t>>&
IndexReader::page_rows(std::size_t page_idx) const {
  std::call_once(inverse_->once, [this] {
    inverse_->rows.resize(pages_.size());
    for (const TermPageRecord& r : relations_) {
      const auto it = id_to_page_.find(r.page_id);
      if (it == id_to_page_.end()) {
        throw StoreIoError("term_page row references unknown page");
      }
      inverse_->rows[it->second].emplace_back(
          static_cast<std::uint32_t>(r.term_id - 1), r.term_freq);
    }
  });
  return inverse_->rows[page_idx];
}

std::vector<std::pair<std::string, std::uint64_t>> IndexReader::doc_terms(
    std::uint64_t page_id) const {
  const auto it = id_to_page_.find(page_id);
  if (it == id_to_page_.end()) {
    throw UnknownPage("no page with id " + std::to_string(page_id));
  }
  const auto& rows = page_rows(it->second);
  std::vector<std::pair<std::string, std::uint64_t>> out;
  out.reserve(rows.size());
  for (const auto& [term_idx, freq] : rows) {
    out.emplace_back(terms_[term_idx].lemma, freq);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

void export_tsv(const IndexReader& index, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw StoreIoError("cannot create " + out_dir.string());

  auto write = [&](const fs::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw StoreIoError("cannot write " + file.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw StoreIoError("failed writing " + file.string());
  };

  std::string term_data = detail::kTermHeader;
  for (const TermRecord& t : index.terms()) {
    detail::append_term_row(term_data, t);
  }
  write(out_dir / detail::kTermFile, term_data);

  std::string page_data = detail::kPageHeader;
  for (const PageRecord& p : index.pages()) {
    detail::append_page_row(page_data, p);
  }
  write(out_dir / detail::kPageFile, page_data);

  std::string rel_data = detail::kTermPageHeader;
  for (const TermPageRecord& r : index.relations()) {
    detail::append_term_page_row(rel_data, r);
  }
  write(out_dir / detail::kTermPageFile, rel_data);
}

}  // namespace wikindex
