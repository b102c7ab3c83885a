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

#ifndef WIKINDEX_DUMP_HPP
#define WIKINDEX_DUMP_HPP

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>

namespace wikindex {

/// One page as it appears in a MediaWiki export file.
struct RawPage {
  std::uint64_t page_id = 0;
  std::string title;
  int namespace_id = 0;
  std::string wikitext;
};

struct IngestConfig {
  std::set<int> namespaces_kept{0};
  bool skip_redirects = true;
  std::optional<std::uint64_t> max_pages;  // testing aid
};

namespace detail {
class DumpReaderImpl;
}

/// Streaming reader over a MediaWiki export XML file (.xml, .xml.gz,
/// .xml.bz2; compression picked by extension). Pages are yielded in document
/// order; memory use is bounded by the largest single page.
///
/// Single consumer per reader; independent readers over different files may
/// run concurrently. RawPage values are plain data, safe to move across
/// threads.
class DumpReader {
 public:
  explicit DumpReader(const std::filesystem::path& path,
                      IngestConfig config = {});
  ~DumpReader();

  DumpReader(DumpReader&&) noexcept;
  DumpReader& operator=(DumpReader&&) noexcept;
  DumpReader(const DumpReader&) = delete;
  DumpReader& operator=(const DumpReader&) = delete;

  /// Next indexable page, or nullopt at end of dump.
  /// Throws MalformedXml (with position) on broken input.
  std::optional<RawPage> next();

 private:
  std::unique_ptr<detail::DumpReaderImpl> impl_;
};

/// True when `wikitext` starts with a redirect directive, optionally
/// preceded by whitespace (case-insensitive `#REDIRECT`).
bool is_redirect(const std::string& wikitext);

}  // namespace wikindex

#endif  // WIKINDEX_DUMP_HPP
