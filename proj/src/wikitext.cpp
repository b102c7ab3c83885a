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

#include "wikindex/wikitext.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "wikindex/lemmatizer.hpp"

namespace wikindex {

namespace {

bool iequal(char a, char b) {
  return std::tolower(static_cast<unsigned char>(a)) ==
         std::tolower(static_cast<unsigned char>(b));
}

/// Case-insensitive search for an ASCII needle.
std::size_t find_ci(std::string_view text, std::string_view needle,
                    std::size_t from) {
  if (needle.empty() || text.size() < needle.size()) return std::string::npos;
  for (std::size_t i = from; i + needle.size() <= text.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (!iequal(text[i + j], needle[j])) {
        hit = false;
        break;
      }
    }
    if (hit) return i;
  }
  return std::string::npos;
}

bool starts_with_ci(std::string_view text, std::string_view prefix) {
  if (text.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (!iequal(text[i], prefix[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Step 1: HTML comments, contents included.

std::string remove_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 4, "<!--") == 0) {
      const std::size_t end = text.find("-->", i + 4);
      if (end == std::string::npos) break;  // unterminated: drop the rest
      i = end + 3;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Steps 2-3: <pre>, <source>, <code> blocks, contents included.

bool tag_name_boundary(char c) {
  return c == '>' || c == '/' || c == ' ' || c == '\t' || c == '\n' ||
         c == '\r';
}

std::string remove_tag_block(std::string_view text, std::string_view tag) {
  const std::string open = "<" + std::string(tag);
  const std::string close = "</" + std::string(tag);
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (iequal(text[i], '<') && starts_with_ci(text.substr(i), open) &&
        (i + open.size() >= text.size() ||
         tag_name_boundary(text[i + open.size()]))) {
      const std::size_t header_end = text.find('>', i);
      if (header_end == std::string::npos) break;  // unterminated header
      if (header_end > i && text[header_end - 1] == '/') {
        i = header_end + 1;  // self-closing
        continue;
      }
      const std::size_t close_at = find_ci(text, close, header_end);
      if (close_at == std::string::npos) break;  // unterminated block
      const std::size_t close_end = text.find('>', close_at);
      if (close_end == std::string::npos) break;
      i = close_end + 1;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Step 4: <ref> footnotes are moved to the end of the text.

std::string extract_refs(std::string_view text) {
  std::string out;
  std::vector<std::string> bodies;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (iequal(text[i], '<') && starts_with_ci(text.substr(i), "<ref") &&
        (i + 4 >= text.size() || tag_name_boundary(text[i + 4]))) {
      const std::size_t header_end = text.find('>', i);
      if (header_end == std::string::npos) break;
      if (text[header_end - 1] == '/') {
        i = header_end + 1;  // self-closing <ref .../>
        continue;
      }
      const std::size_t close_at = find_ci(text, "</ref", header_end);
      if (close_at == std::string::npos) break;  // unterminated: drop the rest
      const std::size_t close_end = text.find('>', close_at);
      if (close_end == std::string::npos) break;
      bodies.emplace_back(text.substr(header_end + 1,
                                      close_at - header_end - 1));
      i = close_end + 1;
      continue;
    }
    out.push_back(text[i++]);
  }
  for (const std::string& body : bodies) {
    out += "\n\n";
    out += body;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Step 5: {{templates}}. One sweep removes templates with no nested opener;
// a template whose inside was rewritten this sweep waits for the next one.

std::string remove_templates_sweep(std::string_view text) {
  struct Open {
    std::size_t pos;
    bool contaminated;
  };
  std::string out;
  out.reserve(text.size());
  std::vector<Open> stack;
  std::size_t i = 0;
  std::size_t truncate_at = std::string::npos;
  while (i < text.size()) {
    if (text.compare(i, 2, "{{") == 0) {
      stack.push_back({out.size(), false});
      out += "{{";
      i += 2;
      continue;
    }
    if (text.compare(i, 2, "}}") == 0 && !stack.empty()) {
      const Open open = stack.back();
      stack.pop_back();
      if (open.contaminated) {
        out += "}}";
      } else {
        out.resize(open.pos);
      }
      if (!stack.empty()) stack.back().contaminated = true;
      i += 2;
      continue;
    }
    out.push_back(text[i++]);
  }
  if (!stack.empty()) truncate_at = stack.front().pos;
  if (truncate_at != std::string::npos) out.resize(truncate_at);
  return out;
}

// ---------------------------------------------------------------------------
// Step 6: {| tables |}, nested included.

std::string remove_tables(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t depth = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 2, "{|") == 0) {
      ++depth;
      i += 2;
      continue;
    }
    if (depth > 0 && text.compare(i, 2, "|}") == 0) {
      --depth;
      i += 2;
      continue;
    }
    if (depth == 0) out.push_back(text[i]);
    ++i;
  }
  // An unclosed table swallows the rest of the text, which is what the
  // depth>0 skip above already did.
  return out;
}

// ---------------------------------------------------------------------------
// Step 7: combining acute accent (U+0301).

std::string remove_acute_accents(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (i + 1 < text.size() && static_cast<unsigned char>(text[i]) == 0xCC &&
        static_cast<unsigned char>(text[i + 1]) == 0x81) {
      i += 2;
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Steps 8-9: bold/italic apostrophe markup.

std::string remove_marker(std::string_view text, std::string_view marker) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, marker.size(), marker) == 0) {
      i += marker.size();
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Steps 10-11: [[links]].

bool is_interwiki_prefix(std::string_view content) {
  // `w:` plus two- and three-letter language/project codes.
  std::size_t letters = 0;
  while (letters < content.size() &&
         std::isalpha(static_cast<unsigned char>(content[letters]))) {
    ++letters;
  }
  if (letters == 0 || letters > 3) return false;
  if (letters >= content.size() || content[letters] != ':') return false;
  return letters >= 2 || (content[0] == 'w' || content[0] == 'W');
}

std::string_view trim_front(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  return s;
}

/// Rewrites the inside of one [[...]] construct into its visible text.
std::string link_replacement(std::string_view content,
                             const ParserConfig& config) {
  std::string_view body = trim_front(content);
  if (!body.empty() && body.front() == ':') body.remove_prefix(1);
  if (starts_with_ci(body, "category:")) return "";
  if (starts_with_ci(body, "image:") || starts_with_ci(body, "file:")) {
    // Keep only the caption: the segment after the last pipe that is outside
    // any nested link.
    std::size_t last_pipe = std::string::npos;
    std::size_t depth = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body.compare(i, 2, "[[") == 0) {
        ++depth;
        ++i;
      } else if (body.compare(i, 2, "]]") == 0) {
        if (depth > 0) --depth;
        ++i;
      } else if (body[i] == '|' && depth == 0) {
        last_pipe = i;
      }
    }
    if (last_pipe == std::string::npos) return "";
    return std::string(body.substr(last_pipe + 1));
  }
  const bool interwiki = is_interwiki_prefix(body);
  if (interwiki && config.remove_not_expand_iwiki) return "";
  const std::size_t pipe = body.find('|');
  if (pipe == std::string::npos) return std::string(body);
  return std::string(body.substr(pipe + 1));
}

/// One sweep over [[...]] constructs, innermost first. Unbalanced openers
/// drop the rest of the text; stray `]]` closers are dropped.
std::string process_links(std::string_view text, const ParserConfig& config,
                          bool images_only) {
  std::string out;
  out.reserve(text.size());
  std::vector<std::size_t> stack;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 2, "[[") == 0) {
      stack.push_back(out.size());
      out += "[[";
      i += 2;
      continue;
    }
    if (text.compare(i, 2, "]]") == 0) {
      if (stack.empty()) {
        if (!images_only) {
          i += 2;  // stray closer
          continue;
        }
        out += "]]";
        i += 2;
        continue;
      }
      const std::size_t open_pos = stack.back();
      stack.pop_back();
      const std::string content = out.substr(open_pos + 2);
      std::string_view body = trim_front(content);
      if (!body.empty() && body.front() == ':') body.remove_prefix(1);
      const bool is_image =
          starts_with_ci(body, "image:") || starts_with_ci(body, "file:");
      if (images_only && !is_image) {
        out += "]]";  // leave for the link step
        i += 2;
        continue;
      }
      out.resize(open_pos);
      out += link_replacement(content, config);
      i += 2;
      continue;
    }
    out.push_back(text[i++]);
  }
  if (!stack.empty()) {
    // In images_only mode keep non-image openers for the link step.
    std::size_t cut = std::string::npos;
    for (const std::size_t pos : stack) {
      std::string_view body = trim_front(std::string_view(out).substr(pos + 2));
      const bool is_image =
          starts_with_ci(body, "image:") || starts_with_ci(body, "file:");
      if (!images_only || is_image) {
        cut = pos;
        break;
      }
    }
    if (cut != std::string::npos) out.resize(cut);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Step 12: [single-bracket external links].

bool looks_like_url(std::string_view token) {
  if (token.empty()) return false;
  const std::size_t dot = token.find('.');
  return dot != std::string::npos && dot + 1 < token.size();
}

std::string process_external_links(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '[') {
      // External links never span lines; the cap also keeps degenerate
      // bracket floods linear.
      const std::size_t limit = std::min(text.size(), i + 4096);
      std::size_t close = std::string::npos;
      for (std::size_t j = i + 1; j < limit; ++j) {
        if (text[j] == ']') {
          close = j;
          break;
        }
        if (text[j] == '\n') break;
      }
      if (close != std::string::npos) {
        std::string_view content = text.substr(i + 1, close - i - 1);
        content = trim_front(content);
        std::size_t ws = 0;
        while (ws < content.size() && content[ws] != ' ' &&
               content[ws] != '\t' && content[ws] != '\n') {
          ++ws;
        }
        const std::string_view first = content.substr(0, ws);
        if (looks_like_url(first)) {
          std::string_view label = trim_front(content.substr(ws));
          out += label;
          i = close + 1;
          continue;
        }
      }
      // Not an external link: keep the bracket, keep scanning inside.
      out.push_back(text[i++]);
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Step 13: XML-unsafe characters, entities, <br>.

bool match_br(std::string_view text, std::size_t i, std::size_t* len) {
  if (!starts_with_ci(text.substr(i), "<br")) return false;
  std::size_t j = i + 3;
  while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
  if (j < text.size() && text[j] == '/') ++j;
  while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
  if (j < text.size() && text[j] == '>') {
    *len = j - i + 1;
    return true;
  }
  return false;
}

/// Replaces a removed character with a space unless the gap sits next to
/// whitespace or closing punctuation ("serrulata", stays "serrulata,").
/// The space is never suppressed next to bracket characters, so a removal
/// cannot splice the surrounding text into new wiki markup.
void space_for_removed(std::string& out, std::string_view text,
                       std::size_t next_pos) {
  if (out.empty() || out.back() == ' ' || out.back() == '\n' ||
      out.back() == '\t' || out.back() == '(') {
    return;
  }
  if (next_pos < text.size()) {
    switch (text[next_pos]) {
      case ' ':
      case '\t':
      case '\n':
      case '\r':
      case ',':
      case '.':
      case ';':
      case ':':
      case '!':
      case '?':
      case ')':
        return;
      default:
        break;
    }
    out.push_back(' ');
  }
}

std::string clean_unsafe_chars(std::string_view text) {
  static constexpr std::string_view kEntities[] = {
      "&lt;", "&gt;", "&amp;", "&quot;", "&#039;",
      "&nbsp;", "&ndash;", "&mdash;",
  };
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t br_len = 0;
    if (match_br(text, i, &br_len)) {
      out.push_back('\n');
      i += br_len;
      continue;
    }
    if (text[i] == '&') {
      bool matched = false;
      for (const std::string_view ent : kEntities) {
        if (starts_with_ci(text.substr(i), ent)) {
          i += ent.size();
          space_for_removed(out, text, i);
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    const char c = text[i];
    if (c == '<' || c == '>' || c == '&' || c == '"') {
      ++i;
      space_for_removed(out, text, i);
      continue;
    }
    out.push_back(text[i++]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Final whitespace normalization: single spaces within lines, trimmed line
// ends, at most one blank line in a row.

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::string line;
  std::size_t newlines = 0;
  auto flush_line = [&] {
    while (!line.empty() && line.back() == ' ') line.pop_back();
    if (!line.empty()) {
      if (!out.empty()) {
        out.append(std::min<std::size_t>(newlines, 2), '\n');
      }
      out += line;
      newlines = 0;
      line.clear();
    }
  };
  for (const char c : text) {
    if (c == '\n') {
      flush_line();
      ++newlines;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      if (!line.empty() && line.back() != ' ') line.push_back(' ');
      continue;
    }
    line.push_back(c);
  }
  flush_line();
  return out;
}

bool has_residual_markup(std::string_view text) {
  return text.find("{{") != std::string::npos ||
         text.find("{|") != std::string::npos ||
         text.find("[[") != std::string::npos ||
         text.find("]]") != std::string::npos;
}

}  // namespace

std::string convert(std::string_view wikitext, const ParserConfig& config) {
  std::string text = remove_comments(wikitext);
  text = remove_tag_block(text, "pre");
  text = remove_tag_block(text, "source");
  text = remove_tag_block(text, "code");
  text = extract_refs(text);
  const unsigned passes = std::max(1u, config.template_passes);
  for (unsigned p = 0; p < passes; ++p) {
    text = remove_templates_sweep(text);
  }
  text = remove_tables(text);
  text = remove_acute_accents(text);
  text = remove_marker(text, "'''");
  text = remove_marker(text, "''");
  text = process_links(text, config, /*images_only=*/true);
  text = process_links(text, config, /*images_only=*/false);
  text = process_external_links(text);

  // Residual markup: nesting deeper than the pass count, or bracket pairs
  // spliced together by earlier rewrites (an image caption ending in `{`
  // followed by `{`). Cut from the first surviving opener to the end of the
  // text, mirroring the unbalanced-markup rule; stray `]]` closers are
  // dropped in place.
  if (has_residual_markup(text)) {
    std::size_t cut = text.size();
    for (const std::string_view bad : {"{{", "{|", "[["}) {
      const std::size_t at = text.find(bad);
      if (at != std::string::npos) cut = std::min(cut, at);
    }
    text.resize(cut);
    if (text.find("]]") != std::string::npos) {
      std::string stripped;
      stripped.reserve(text.size());
      for (std::size_t i = 0; i < text.size();) {
        if (text.compare(i, 2, "]]") == 0) {
          i += 2;
          continue;
        }
        stripped.push_back(text[i++]);
      }
      text = std::move(stripped);
    }
  }

  text = clean_unsafe_chars(text);
  return normalize_whitespace(text);
}

PlainDoc parse_page(const RawPage& page, const ParserConfig& config) {
  PlainDoc doc;
  doc.page_id = page.page_id;
  doc.title = page.title;
  doc.text = convert(page.wikitext, config);
  doc.word_count = tokenize(doc.text).size();
  return doc;
}

}  // namespace wikindex
