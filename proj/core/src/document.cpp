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

#include "papergraph/document.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "papergraph/error.hpp"

namespace papergraph {
namespace {

using nlohmann::json;

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

bool starts_sentence(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && (std::isupper(u) || std::isdigit(u));
}

constexpr std::array<std::string_view, 28> kAbbreviations = {
    "e.g.", "i.e.", "al.",   "fig.",  "figs.", "eq.",  "eqs.",
    "sec.", "no.",  "vs.",   "cf.",   "dr.",   "mr.",  "mrs.",
    "ms.",  "prof.", "approx.", "resp.", "tab.", "ref.", "refs.",
    "st.",  "jr.",  "ch.",   "vol.",  "pp.",   "viz.", "ca."};

// The whitespace-delimited token that ends at `dot` (inclusive).
bool is_abbreviation(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  std::string token(text.substr(begin, dot - begin + 1));
  // Leading punctuation such as "(e.g." does not change the token.
  while (!token.empty() && (token.front() == '(' || token.front() == '[' ||
                            token.front() == '"' || token.front() == '\'')) {
    token.erase(token.begin());
  }
  std::transform(token.begin(), token.end(), token.begin(), [](char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  });
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), token) !=
         kAbbreviations.end();
}

void validate_section(const Section& s, const std::string& index_path,
                      int expected_level, std::vector<Violation>& out) {
  const std::string shown = index_path + " \"" + s.heading_text + "\"";
  if (s.level != expected_level) {
    out.push_back({shown, "level " + std::to_string(s.level) +
                              " but expected " +
                              std::to_string(expected_level)});
  }
  for (std::size_t i = 0; i < s.children.size(); ++i) {
    validate_section(s.children[i],
                     index_path + ".children[" + std::to_string(i) + "]",
                     s.level + 1, out);
  }
}

// Emits the non-blank newline-delimited segments of `body`.
void split_passages(const std::string& body, std::size_t heading,
                    const std::vector<std::string>& section_trail,
                    SegmentedDocument& seg, std::size_t& next_sentence) {
  std::size_t begin = 0;
  while (begin <= body.size()) {
    std::size_t end = body.find('\n', begin);
    if (end == std::string::npos) end = body.size();
    const auto line = trim(std::string_view(body).substr(begin, end - begin));
    if (!line.empty()) {
      SegPassage p;
      p.id = seg.passages.size();
      p.heading = heading;
      p.section_path = section_trail;
      p.text = std::string(line);
      for (auto& sentence : split_sentences(line)) {
        p.sentences.push_back({next_sentence++, std::move(sentence)});
      }
      seg.passages.push_back(std::move(p));
    }
    begin = end + 1;
  }
}

void collect_flattened(const Section& s, std::size_t heading,
                       std::vector<std::string> trail, SegmentedDocument& seg,
                       std::size_t& next_sentence) {
  trail.push_back(s.heading_text);
  split_passages(s.body, heading, trail, seg, next_sentence);
  for (const auto& child : s.children) {
    collect_flattened(child, heading, trail, seg, next_sentence);
  }
}

Section section_from_json(const json& j, const std::string& where) {
  if (!j.is_object()) {
    throw Error(ErrorKind::kInvalidDocument, where + ": section is not an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "heading_text" && key != "level" && key != "body" &&
        key != "children") {
      throw Error(ErrorKind::kInvalidDocument,
                  where + ": unknown field \"" + key + "\"");
    }
  }
  Section s;
  try {
    s.heading_text = j.at("heading_text").get<std::string>();
    s.level = j.at("level").get<int>();
    s.body = j.at("body").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidDocument, where + ": " + e.what());
  }
  if (j.contains("children")) {
    const auto& children = j.at("children");
    if (!children.is_array()) {
      throw Error(ErrorKind::kInvalidDocument, where + ": children is not an array");
    }
    for (std::size_t i = 0; i < children.size(); ++i) {
      s.children.push_back(section_from_json(
          children[i], where + ".children[" + std::to_string(i) + "]"));
    }
  }
  return s;
}

json section_to_json(const Section& s) {
  json children = json::array();
  for (const auto& c : s.children) children.push_back(section_to_json(c));
  return json{{"heading_text", s.heading_text},
              {"level", s.level},
              {"body", s.body},
              {"children", std::move(children)}};
}

}  // namespace

std::string_view trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    while (j < text.size() && (is_closer(text[j]) || text[j] == c)) ++j;
    if (j >= text.size() || !is_space(text[j])) continue;
    std::size_t k = j;
    while (k < text.size() && is_space(text[k])) ++k;
    if (k >= text.size() || !starts_sentence(text[k])) continue;
    if (c == '.' && is_abbreviation(text, i)) continue;
    const auto piece = trim(text.substr(start, j - start));
    if (!piece.empty()) sentences.emplace_back(piece);
    start = k;
    i = k - 1;
  }
  const auto tail = trim(text.substr(std::min(start, text.size())));
  if (!tail.empty()) sentences.emplace_back(tail);
  return sentences;
}

std::vector<Violation> validate_document(const ParsedDocument& doc) {
  std::vector<Violation> out;
  if (doc.doc_id.empty()) out.push_back({"doc_id", "doc_id empty"});
  for (std::size_t i = 0; i < doc.sections.size(); ++i) {
    validate_section(doc.sections[i], "sections[" + std::to_string(i) + "]", 1,
                     out);
  }
  return out;
}

std::vector<Violation> validate_corpus(const std::vector<ParsedDocument>& docs) {
  std::vector<Violation> out;
  std::set<std::string> seen;
  for (const auto& d : docs) {
    for (auto& v : validate_document(d)) {
      v.path = d.doc_id + ":" + v.path;
      out.push_back(std::move(v));
    }
    if (!d.doc_id.empty() && !seen.insert(d.doc_id).second) {
      out.push_back({d.doc_id, "duplicate doc_id"});
    }
  }
  return out;
}

std::size_t SegmentedDocument::sentence_count() const {
  std::size_t n = 0;
  for (const auto& p : passages) n += p.sentences.size();
  return n;
}

SegmentedDocument segment_document(const ParsedDocument& doc) {
  const auto violations = validate_document(doc);
  if (!violations.empty()) {
    throw Error(ErrorKind::kInvalidDocument,
                doc.doc_id + ": " + violations.front().path + ": " +
                    violations.front().message);
  }
  SegmentedDocument seg;
  seg.doc_id = doc.doc_id;
  seg.title = doc.title;
  std::size_t next_sentence = 0;
  for (const auto& top : doc.sections) {
    const std::size_t h = seg.headings.size();
    seg.headings.push_back({top.heading_text, 1, -1});
    split_passages(top.body, h, {top.heading_text}, seg, next_sentence);
    for (const auto& sub : top.children) {
      const std::size_t sh = seg.headings.size();
      seg.headings.push_back({sub.heading_text, 2, static_cast<std::int64_t>(h)});
      collect_flattened(sub, sh, {top.heading_text}, seg, next_sentence);
    }
  }
  if (seg.passages.empty()) {
    throw Error(ErrorKind::kEmptyDocument, doc.doc_id + ": no passages");
  }
  return seg;
}

ParsedDocument parse_document_json(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidDocument, e.what());
  }
  if (!j.is_object()) {
    throw Error(ErrorKind::kInvalidDocument, "document is not an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (key != "doc_id" && key != "title" && key != "sections") {
      throw Error(ErrorKind::kInvalidDocument, "unknown field \"" + key + "\"");
    }
  }
  ParsedDocument doc;
  try {
    doc.doc_id = j.at("doc_id").get<std::string>();
    doc.title = j.at("title").get<std::string>();
    const auto& sections = j.at("sections");
    if (!sections.is_array()) {
      throw Error(ErrorKind::kInvalidDocument, "sections is not an array");
    }
    for (std::size_t i = 0; i < sections.size(); ++i) {
      doc.sections.push_back(
          section_from_json(sections[i], "sections[" + std::to_string(i) + "]"));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidDocument, e.what());
  }
  return doc;
}

ParsedDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document_json(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

std::string document_to_json(const ParsedDocument& doc) {
  json sections = json::array();
  for (const auto& s : doc.sections) sections.push_back(section_to_json(s));
  json j{{"doc_id", doc.doc_id}, {"title", doc.title},
         {"sections", std::move(sections)}};
  return j.dump(2) + "\n";
}

std::vector<ParsedDocument> load_document_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::kIoFailure, "not a directory: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ParsedDocument> docs;
  docs.reserve(files.size());
  for (const auto& f : files) docs.push_back(load_document(f));
  return docs;
}

}  // namespace papergraph
