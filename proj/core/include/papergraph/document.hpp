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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace papergraph {

// Parsed-document input. One document per JSON file with the fields
// {doc_id, title, sections: [{heading_text, level, body, children: [...]}]}.
struct Section {
  std::string heading_text;
  int level = 1;
  std::string body;
  std::vector<Section> children;
};

struct ParsedDocument {
  std::string doc_id;
  std::string title;
  std::vector<Section> sections;
};

struct Violation {
  std::string path;  // e.g. sections[1].children[0] "Setup"
  std::string message;
};

std::vector<Violation> validate_document(const ParsedDocument& doc);

// Corpus-level check: doc ids must be unique across documents.
std::vector<Violation> validate_corpus(const std::vector<ParsedDocument>& docs);

// Heading tier after flattening: 1 = heading, 2 = sub-heading. Sections at
// level >= 3 contribute their text to the nearest level-2 ancestor.
struct HeadingEntry {
  std::string text;
  int tier = 1;
  std::int64_t parent = -1;  // heading index for sub-headings, -1 otherwise
};

struct SegSentence {
  std::size_t id = 0;  // zero-based, document order, unique per document
  std::string text;
};

struct SegPassage {
  std::size_t id = 0;       // zero-based, document order
  std::size_t heading = 0;  // index into SegmentedDocument::headings
  std::vector<std::string> section_path;
  std::string text;
  std::vector<SegSentence> sentences;
};

struct SegmentedDocument {
  std::string doc_id;
  std::string title;
  std::vector<HeadingEntry> headings;
  std::vector<SegPassage> passages;

  std::size_t sentence_count() const;
};

// Splits every section body at newline characters into passages (blank
// segments dropped) and every passage into sentences. Throws
// Error(kEmptyDocument) when no passage survives and Error(kInvalidDocument)
// when validate_document reports violations.
SegmentedDocument segment_document(const ParsedDocument& doc);

// Deterministic rule-based splitter: a sentence ends at . ! or ? (plus any
// closing quotes or brackets) followed by whitespace and an uppercase letter
// or digit, unless the token is an allowlisted abbreviation.
std::vector<std::string> split_sentences(std::string_view text);

std::string_view trim(std::string_view text);

ParsedDocument parse_document_json(std::string_view json_text);
ParsedDocument load_document(const std::filesystem::path& path);
std::string document_to_json(const ParsedDocument& doc);

// Loads every *.json file in a directory, sorted by file name.
std::vector<ParsedDocument> load_document_dir(const std::filesystem::path& dir);

}  // namespace papergraph
