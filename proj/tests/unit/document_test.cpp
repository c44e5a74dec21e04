// Copyright 2026 The papergraph Authors
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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "thrown.hpp"
#include "papergraph/document.hpp"
#include "papergraph/error.hpp"

namespace papergraph {
namespace {

using testing::thrown_kind;

TEST(SplitSentences, BreaksOnTerminalPunctuation) {
  const auto s = split_sentences("We propose a graph. It works well! Does it scale? Yes.");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], "We propose a graph.");
  EXPECT_EQ(s[2], "Does it scale?");
  EXPECT_EQ(s[3], "Yes.");
}

TEST(SplitSentences, KeepsAbbreviationsAndDecimals) {
  const auto s = split_sentences("Results improve, e.g. Table 2 shows 3.5 points. Smith et al. Agree.");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], "Results improve, e.g. Table 2 shows 3.5 points.");
}

TEST(SplitSentences, LowercaseContinuationIsNotABoundary) {
  EXPECT_EQ(split_sentences("See the appendix. then continue.").size(), 1u);
}

TEST(SplitSentences, ClosersStayWithTheirSentence) {
  const auto s = split_sentences("He said \"stop.\" Then left.");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], "He said \"stop.\"");
}

TEST(SplitSentences, EmptyAndWhitespace) {
  EXPECT_TRUE(split_sentences("").empty());
  EXPECT_TRUE(split_sentences("   \t").empty());
  EXPECT_EQ(split_sentences("No terminator").size(), 1u);
}

TEST(Trim, StripsBothEnds) {
  EXPECT_EQ(trim("  a b \n"), "a b");
  EXPECT_EQ(trim("\t\n"), "");
}

TEST(Segment, ToyDocumentCounts) {
  const auto seg = segment_document(testing::toy_document());
  EXPECT_EQ(seg.headings.size(), 4u);
  EXPECT_EQ(seg.passages.size(), 4u);
  EXPECT_EQ(seg.sentence_count(), 6u);
  EXPECT_EQ(seg.headings[1].tier, 2);
  EXPECT_EQ(seg.headings[1].parent, 0);
  EXPECT_EQ(seg.passages[0].section_path, (std::vector<std::string>{"Introduction", "Background"}));
}

TEST(Segment, BlankLinesDropped) {
  ParsedDocument doc{"d", "t", {{"H", 1, "\n\nOne line.\n   \n\nTwo line.\n", {}}}};
  const auto seg = segment_document(doc);
  ASSERT_EQ(seg.passages.size(), 2u);
  EXPECT_EQ(seg.passages[1].text, "Two line.");
}

TEST(Segment, DeepLevelsFlattenIntoLevelTwo) {
  Section l3{"Deep", 3, "Deep text.", {{"Deeper", 4, "Deeper text.", {}}}};
  Section l2{"Sub", 2, "Sub text.", {l3}};
  ParsedDocument doc{"d", "t", {{"Top", 1, "", {l2}}}};
  const auto seg = segment_document(doc);
  ASSERT_EQ(seg.headings.size(), 2u);
  ASSERT_EQ(seg.passages.size(), 3u);
  for (const auto& p : seg.passages) EXPECT_EQ(p.heading, 1u);
  EXPECT_EQ(seg.passages[2].section_path.back(), "Deeper");
}

TEST(Segment, TitleIsNotAPassage) {
  ParsedDocument doc{"d", "A title.", {{"H", 1, "Body.", {}}}};
  EXPECT_EQ(segment_document(doc).passages.size(), 1u);
}

TEST(Segment, EmptyDocumentRejected) {
  ParsedDocument doc{"d", "t", {{"H", 1, "  \n", {}}}};
  EXPECT_EQ(thrown_kind([&] { segment_document(doc); }), ErrorKind::kEmptyDocument);
  ParsedDocument none{"d", "t", {}};
  EXPECT_EQ(thrown_kind([&] { segment_document(none); }), ErrorKind::kEmptyDocument);
}

TEST(Segment, BadLevelRejectedWithPath) {
  ParsedDocument doc{"d", "t", {{"Top", 1, "x.", {{"Wrong \"q\"", 3, "y.", {}}}}}};
  const auto v = validate_document(doc);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].path, "sections[0].children[0] \"Wrong \"q\"\"");
  EXPECT_EQ(thrown_kind([&] { segment_document(doc); }), ErrorKind::kInvalidDocument);
}

TEST(Segment, DuplicateDocIdsInCorpus) {
  ParsedDocument a{"same", "t", {{"H", 1, "x.", {}}}};
  const auto v = validate_corpus({a, a});
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].message, "duplicate doc_id");
}

// Re-segmenting the concatenation of a document's sentences reproduces them.
TEST(SegmentProperty, Idempotent) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto seg = segment_document(testing::random_document(rng, 120));
    std::size_t expected_id = 0;
    for (const auto& p : seg.passages) {
      std::string joined;
      for (const auto& s : p.sentences) {
        EXPECT_EQ(s.id, expected_id++);
        if (!joined.empty()) joined += ' ';
        joined += s.text;
      }
      std::vector<std::string> again = split_sentences(joined);
      ASSERT_EQ(again.size(), p.sentences.size());
      for (std::size_t i = 0; i < again.size(); ++i) EXPECT_EQ(again[i], p.sentences[i].text);
    }
  }
}

// Passage count equals the number of non-blank lines across all bodies.
TEST(SegmentProperty, PassageCountMatchesLineCount) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto doc = testing::random_document(rng, 150);
    std::size_t lines = 0;
    std::function<void(const Section&)> count = [&](const Section& s) {
      std::size_t begin = 0;
      while (begin <= s.body.size()) {
        auto end = s.body.find('\n', begin);
        if (end == std::string::npos) end = s.body.size();
        if (!trim(std::string_view(s.body).substr(begin, end - begin)).empty()) ++lines;
        begin = end + 1;
      }
      for (const auto& c : s.children) count(c);
    };
    for (const auto& s : doc.sections) count(s);
    EXPECT_EQ(segment_document(doc).passages.size(), lines);
  }
}

TEST(DocumentJson, RoundTrip) {
  const auto doc = testing::toy_document();
  const auto back = parse_document_json(document_to_json(doc));
  EXPECT_EQ(document_to_json(back), document_to_json(doc));
  EXPECT_EQ(back.sections[0].children[1].heading_text, "Motivation");
}

TEST(DocumentJson, ChildrenOptional) {
  const auto doc = parse_document_json(
      R"({"doc_id":"a","title":"t","sections":[{"heading_text":"H","level":1,"body":"B."}]})");
  EXPECT_TRUE(doc.sections[0].children.empty());
}

TEST(DocumentJson, StrictSchema) {
  EXPECT_EQ(thrown_kind([] { parse_document_json("{"); }), ErrorKind::kInvalidDocument);
  EXPECT_EQ(thrown_kind([] { parse_document_json(R"({"doc_id":"a","title":"t"})"); }),
            ErrorKind::kInvalidDocument);
  EXPECT_EQ(thrown_kind([] {
              parse_document_json(R"({"doc_id":"a","title":"t","sections":[],"extra":1})");
            }),
            ErrorKind::kInvalidDocument);
  EXPECT_EQ(thrown_kind([] {
              parse_document_json(
                  R"({"doc_id":"a","title":"t","sections":[{"heading_text":"H","level":"1","body":""}]})");
            }),
            ErrorKind::kInvalidDocument);
}

TEST(DocumentJson, LoadNamesTheFile) {
  const auto dir = std::filesystem::temp_directory_path() / "pg_doc_test";
  std::filesystem::create_directories(dir);
  const auto bad = dir / "broken.json";
  std::ofstream(bad) << "{not json";
  try {
    load_document(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("broken.json"), std::string::npos);
  }
  EXPECT_EQ(thrown_kind([&] { load_document(dir / "missing.json"); }), ErrorKind::kIoFailure);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace papergraph
