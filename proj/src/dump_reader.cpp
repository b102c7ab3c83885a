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

#include "wikindex/dump.hpp"

#include <expat.h>

#include <cstdlib>
#include <cstring>
#include <deque>
#include <string_view>

#include "wikindex/byte_source.hpp"
#include "wikindex/errors.hpp"

namespace wikindex {

bool is_redirect(const std::string& wikitext) {
  std::size_t i = 0;
  while (i < wikitext.size() &&
         std::isspace(static_cast<unsigned char>(wikitext[i]))) {
    ++i;
  }
  static constexpr std::string_view kDirective = "#redirect";
  if (wikitext.size() - i < kDirective.size()) return false;
  for (std::size_t j = 0; j < kDirective.size(); ++j) {
    if (std::tolower(static_cast<unsigned char>(wikitext[i + j])) !=
        kDirective[j]) {
      return false;
    }
  }
  return true;
}

namespace detail {

class DumpReaderImpl {
 public:
  DumpReaderImpl(const std::filesystem::path& path, IngestConfig config)
      : config_(std::move(config)),
        source_(io::open_byte_source(path)),
        parser_(XML_ParserCreate("UTF-8")) {
    if (config_.namespaces_kept.empty()) {
      throw Error("namespaces_kept must be nonempty");
    }
    if (!parser_) throw Error("failed to create XML parser");
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &DumpReaderImpl::on_start,
                          &DumpReaderImpl::on_end);
    XML_SetCharacterDataHandler(parser_, &DumpReaderImpl::on_text);
  }

  ~DumpReaderImpl() {
    if (parser_) XML_ParserFree(parser_);
  }

  std::optional<RawPage> next() {
    while (ready_.empty() && !finished_) {
      parse_chunk();
    }
    if (ready_.empty()) return std::nullopt;
    RawPage page = std::move(ready_.front());
    ready_.pop_front();
    if (config_.max_pages && ++yielded_ >= *config_.max_pages) {
      finished_ = true;
      ready_.clear();
    }
    return page;
  }

 private:
  static constexpr std::size_t kChunkSize = 1 << 16;

  void parse_chunk() {
    char buf[kChunkSize];
    const std::size_t got = source_->read(buf, sizeof buf);
    const bool is_final = (got == 0);
    if (XML_Parse(parser_, buf, static_cast<int>(got), is_final) ==
        XML_STATUS_ERROR) {
      throw MalformedXml(XML_ErrorString(XML_GetErrorCode(parser_)),
                         XML_GetCurrentLineNumber(parser_),
                         XML_GetCurrentColumnNumber(parser_));
    }
    if (is_final) finished_ = true;
  }

  static void on_start(void* self_ptr, const XML_Char* name,
                       const XML_Char** /*attrs*/) {
    auto* self = static_cast<DumpReaderImpl*>(self_ptr);
    ++self->depth_;
    const std::string_view element(name);
    if (element == "page") {
      self->in_page_ = true;
      self->page_depth_ = self->depth_;
      self->title_.clear();
      self->ns_text_.clear();
      self->id_text_.clear();
      self->wikitext_.clear();
      return;
    }
    if (!self->in_page_) return;
    if (element == "revision" && self->depth_ == self->page_depth_ + 1) {
      self->in_revision_ = true;
      return;
    }
    self->capture_ = nullptr;
    if (self->depth_ == self->page_depth_ + 1) {
      if (element == "title") {
        self->capture_ = &self->title_;
      } else if (element == "ns") {
        self->capture_ = &self->ns_text_;
      } else if (element == "id" && self->id_text_.empty()) {
        self->capture_ = &self->id_text_;
      }
    } else if (self->in_revision_ && element == "text" &&
               self->depth_ == self->page_depth_ + 2) {
      // Keep only the latest revision's text.
      self->wikitext_.clear();
      self->capture_ = &self->wikitext_;
    }
  }

  static void on_end(void* self_ptr, const XML_Char* name) {
    auto* self = static_cast<DumpReaderImpl*>(self_ptr);
    const std::string_view element(name);
    self->capture_ = nullptr;
    if (self->in_page_ && element == "revision" &&
        self->depth_ == self->page_depth_ + 1) {
      self->in_revision_ = false;
    }
    if (self->in_page_ && element == "page" &&
        self->depth_ == self->page_depth_) {
      self->finish_page();
      self->in_page_ = false;
    }
    --self->depth_;
  }

  static void on_text(void* self_ptr, const XML_Char* data, int len) {
    auto* self = static_cast<DumpReaderImpl*>(self_ptr);
    if (self->capture_) self->capture_->append(data, len);
  }

  void finish_page() {
    RawPage page;
    page.title = clean_title(title_);
    page.namespace_id =
        ns_text_.empty() ? 0 : std::atoi(ns_text_.c_str());
    page.wikitext = std::move(wikitext_);
    if (!id_text_.empty()) {
      page.page_id = std::strtoull(id_text_.c_str(), nullptr, 10);
    }
    if (page.page_id == 0) page.page_id = ++auto_id_;
    if (page.title.empty()) return;  // not an article
    if (!config_.namespaces_kept.count(page.namespace_id)) return;
    if (config_.skip_redirects && is_redirect(page.wikitext)) return;
    ready_.push_back(std::move(page));
  }

  static std::string clean_title(const std::string& raw) {
    std::size_t b = 0, e = raw.size();
    while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
    std::string title = raw.substr(b, e - b);
    for (char& c : title) {
      if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    return title;
  }

  IngestConfig config_;
  std::unique_ptr<io::ByteSource> source_;
  XML_Parser parser_;

  std::deque<RawPage> ready_;
  bool finished_ = false;
  std::uint64_t yielded_ = 0;
  std::uint64_t auto_id_ = 0;

  // Current-element state.
  int depth_ = 0;
  int page_depth_ = 0;
  bool in_page_ = false;
  bool in_revision_ = false;
  std::string* capture_ = nullptr;
  std::string title_;
  std::string ns_text_;
  std::string id_text_;
  std::string wikitext_;
};

}  // namespace detail

DumpReader::DumpReader(const std::filesystem::path& path, IngestConfig config)
    : impl_(std::make_unique<detail::DumpReaderImpl>(path, std::move(config))) {}

DumpReader::~DumpReader() = default;
DumpReader::DumpReader(DumpReader&&) noexcept = default;
DumpReader& DumpReader::operator=(DumpReader&&) noexcept = default;

std::optional<RawPage> DumpReader::next() { return impl_->next(); }

}  // namespace wikindex
