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

#include <random>

#include "test_util.hpp"
#include "wikindex/wikitext.hpp"

using wikindex::ParserConfig;
using wikindex::RawPage;
using wikindex::convert;
using wikindex::parse_page;

namespace {

bool clean_of_markup(const std::string& text) {
  for (const char* bad : {"{{", "{|", "[[", "]]", "<ref", "<pre", "<!--"}) {
    if (text.find(bad) != std::string::npos) return false;
  }
  return true;
}

/// Random markup soup; exercises every bracket construct plus plain text.
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

}  // namespace

TEST_SUITE("wikitext") {

TEST_CASE("image caption kept, filename and parameters dropped") {
  CHECK(convert("[[Image:Asimov.jpg|thumb|180px|right|[[Isaac Asimov]] with "
                "his [[typewriter]].]]") ==
        "Isaac Asimov with his typewriter.");
  // No caption at all: nothing survives.
  CHECK(convert("[[Image:Asimov.jpg]]") == "");
  CHECK(convert("[[File:Photo.png|thumb|A cat.]]") == "A cat.");
}

TEST_CASE("interwiki links removed by default, kept on request") {
  CHECK(convert("text [[fr:Chat]] more") == "text more");
  CHECK(convert("see [[w:Page|label]] here") == "see here");
  ParserConfig keep;
  keep.remove_not_expand_iwiki = false;
  CHECK(convert("see [[w:Page|label]] here", keep) == "see label here");
  CHECK(convert("[[de:Haus]]", keep) == "de:Haus");
  // Longer prefixes are ordinary links, not interwiki.
  CHECK(convert("[[Wikipedia:Manual|the manual]]") == "the manual");
}

TEST_CASE("category links deleted") {
  CHECK(convert("[[Category:Japan]]") == "");
  CHECK(convert("x [[Category:Drinks|sort key]] y") == "x y");
}

TEST_CASE("templates, quotes and tables deleted") {
  CHECK(convert("{{Infobox|name=Tea}}") == "");
  CHECK(convert("a {{cite|x}} b") == "a b");
  CHECK(convert("a {| class=\"wikitable\" | cell |} b") == "a b");
  // A table inside a table goes too.
  CHECK(convert("x {| outer {| inner |} rest |} y") == "x y");
}

TEST_CASE("bold and italic markers unwrapped") {
  CHECK(convert("''italic'' '''bold'''") == "italic bold");
  CHECK(convert("'''''both'''''") == "both");
  CHECK(convert("don't") == "don't");
}

TEST_CASE("internal links keep their visible text") {
  CHECK(convert("[[run]]") == "run");
  CHECK(convert("[[Russian language|Russian]]") == "Russian");
  CHECK(convert("their [[flower|blossoms]].") == "their blossoms.");
  ParserConfig keep;
  keep.remove_not_expand_iwiki = false;
  CHECK(convert("[[w:Wikipedia:Interwikimedia_links|text to expand]] [[run]] "
                "[[Russian language|Russian]] their [[flower|blossoms]].",
                keep) == "text to expand run Russian their blossoms.");
}

TEST_CASE("external links keep the label, urls vanish") {
  CHECK(convert("[http://example.com Russian]") == "Russian");
  CHECK(convert("[http://www.hedpe.ru site hedpe.ru - russian fan-site]") ==
        "site hedpe.ru - russian fan-site");
  CHECK(convert("[http://example.com]") == "");
  // Not a URL: bracket construct left alone.
  CHECK(convert("[citation needed]") == "[citation needed]");
}

TEST_CASE("refs move to the end of the text") {
  CHECK(convert("word1<ref>Ref text.</ref> word2.") ==
        "word1 word2.\n\nRef text.");
  CHECK(convert("a<ref name=\"x\"/>b") == "ab");
  CHECK(convert("two<ref>first</ref> refs<ref>second</ref>.") ==
        "two refs.\n\nfirst\n\nsecond");
}

TEST_CASE("comments, pre and code blocks removed with contents") {
  CHECK(convert("a <!-- hidden --> b") == "a b");
  CHECK(convert("a <pre>verbatim {{x}}</pre> b") == "a b");
  CHECK(convert("a <code>int x;</code> b") == "a b");
  CHECK(convert("a <source lang=\"c\">f()</source> b") == "a b");
  // Unterminated comment swallows the rest.
  CHECK(convert("a <!-- open") == "a");
}

TEST_CASE("accents and unsafe characters") {
  // Combining acute accent is dropped.
  CHECK(convert("\xD0\x9F\xD0\xB0\xCC\x81\xD0\xB2") == "\xD0\x9F\xD0\xB0\xD0\xB2");
  CHECK(convert("a < b > c & d \" e") == "a b c d e");
  CHECK(convert("x&lt;y&gt;z") == "x y z");
  CHECK(convert("one<br>two<br />three") == "one\ntwo\nthree");
  CHECK(convert("A &amp; B") == "A B");
  CHECK(convert("\"Prunus serrulata\",") == "Prunus serrulata,");
}

TEST_CASE("empty input") {
  CHECK(convert("") == "");
  CHECK(convert("   \n\n  ") == "");
}

TEST_CASE("headings and list bullets survive verbatim") {
  CHECK(convert("==See also==") == "==See also==");
  CHECK(convert("* [[Hanami]]") == "* Hanami");
}

TEST_CASE("template nesting honors the pass count") {
  CHECK(convert("{{a {{b}} c}}") == "");
  ParserConfig one_pass;
  one_pass.template_passes = 1;
  // One pass strips the leaf; the leftover opener is cut to end of text.
  CHECK(convert("X {{a {{b}} c}} Y", one_pass) == "X");
  CHECK(convert("X {{a {{b}} c}} Y") == "X Y");
  // Three levels: all passes plus the final cut keep the output clean.
  const std::string deep = convert("X {{a {{b {{c}} d}} e}} Y");
  CHECK(clean_of_markup(deep));
}

TEST_CASE("unbalanced markup never leaks") {
  CHECK(convert("a {{ no close") == "a");
  CHECK(convert("a {| no close") == "a");
  CHECK(convert("a [[ no close") == "a");
  CHECK(convert("a }} b") == "a }} b");  // stray closer stays
  CHECK(convert("a ]] b") == "a b");     // bracket closers must not leak
  CHECK(convert("<ref>no close") == "");
}

TEST_CASE("sakura golden fragment") {
  const auto input = testutil::read_file(testutil::data_dir() / "sakura.wiki");
  const auto expected =
      testutil::read_file(testutil::data_dir() / "sakura_expected.txt");
  CHECK(testutil::squash_ws(convert(input)) == testutil::squash_ws(expected));
}

TEST_CASE("parse_page fills PlainDoc") {
  RawPage page;
  page.page_id = 7;
  page.title = "Sakura";
  page.wikitext = testutil::read_file(testutil::data_dir() / "sakura.wiki");
  const auto doc = parse_page(page);
  CHECK(doc.page_id == 7);
  CHECK(doc.title == "Sakura");
  CHECK(doc.word_count > 0);

  RawPage empty;
  empty.page_id = 8;
  empty.title = "Empty";
  CHECK(parse_page(empty).word_count == 0);

  RawPage only_template;
  only_template.page_id = 9;
  only_template.title = "T";
  only_template.wikitext = "{{X}}";
  const auto tdoc = parse_page(only_template);
  CHECK(tdoc.text == "");
  CHECK(tdoc.word_count == 0);
}

TEST_CASE("fuzz: output clean and conversion idempotent") {
  std::mt19937 rng(0xC0FFEE);
  for (int i = 0; i < 2000; ++i) {
    const std::string input = random_markup(rng);
    const std::string once = convert(input);
    INFO("input: " << input);
    CHECK(clean_of_markup(once));
    CHECK(convert(once) == once);
  }
}

TEST_CASE("monotone safety: no new characters invented") {
  std::mt19937 rng(42);
  for (int i = 0; i < 300; ++i) {
    const std::string input = random_markup(rng);
    const std::string out = convert(input);
    for (const char c : out) {
      if (c == ' ' || c == '\n') continue;
      INFO("input: " << input);
      CHECK(input.find(c) != std::string::npos);
    }
  }
}

}  // TEST_SUITE
