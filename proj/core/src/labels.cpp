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

#include "papergraph/labels.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "papergraph/error.hpp"

namespace papergraph {
namespace {

using nlohmann::json;

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += id;
  }
  return out;
}

std::size_t parse_size(const std::string& text, const std::string& where) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text.front() == '-') {
    throw Error(ErrorKind::kInvalidDocument, where + ": not an integer: \"" + text + "\"");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

FeedbackDocument parse_feedback_json(std::string_view json_text) {
  FeedbackDocument fb;
  try {
    const auto j = json::parse(json_text);
    fb.doc_id = j.at("doc_id").get<std::string>();
    for (std::size_t s = 0; s < kFeedbackSectionNames.size(); ++s) {
      const std::string name(kFeedbackSectionNames[s]);
      if (j.contains(name)) fb.sections[s] = j.at(name).get<std::vector<std::string>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kInvalidDocument, e.what());
  }
  if (fb.doc_id.empty()) throw Error(ErrorKind::kInvalidDocument, "doc_id empty");
  const bool any = std::any_of(fb.sections.begin(), fb.sections.end(),
                               [](const auto& s) { return !s.empty(); });
  if (!any) {
    throw Error(ErrorKind::kInvalidDocument, fb.doc_id + ": all feedback sections empty");
  }
  return fb;
}

FeedbackDocument load_feedback(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_feedback_json(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

std::vector<FeedbackDocument> load_feedback_dir(const std::filesystem::path& dir) {
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
  std::vector<FeedbackDocument> out;
  for (const auto& f : files) out.push_back(load_feedback(f));
  return out;
}

std::string Query::key() const {
  return query_key(doc_id, kFeedbackSectionNames[static_cast<std::size_t>(section)],
                   window_index);
}

std::vector<Query> make_queries(const FeedbackDocument& feedback, std::size_t k,
                                const QueryOptions& options) {
  if (k == 0) throw Error(ErrorKind::kInvalidConfig, "k must be positive");
  std::vector<Query> out;
  for (std::size_t s = 0; s < feedback.sections.size(); ++s) {
    const auto& sentences = feedback.sections[s];
    const std::size_t n = sentences.size();
    if (n == 0) continue;
    std::vector<std::size_t> starts;
    if (options.overlapping) {
      const std::size_t last = n > k ? n - k : 0;
      for (std::size_t i = 0; i <= last; ++i) starts.push_back(i);
    } else {
      for (std::size_t i = 0; i < n; i += k) starts.push_back(i);
    }
    for (std::size_t w = 0; w < starts.size(); ++w) {
      Query q;
      q.doc_id = feedback.doc_id;
      q.section = static_cast<FeedbackSection>(s);
      q.window_index = w;
      const std::size_t end = std::min(n, starts[w] + k);
      q.length = end - starts[w];
      for (std::size_t i = starts[w]; i < end; ++i) {
        if (i > starts[w]) q.text += ' ';
        q.text += sentences[i];
      }
      out.push_back(std::move(q));
    }
  }
  return out;
}

double similarity(std::span<const float> a, std::span<const float> b,
                  Similarity kind) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kDimMismatch, std::to_string(a.size()) + " vs " +
                                             std::to_string(b.size()));
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  if (kind == Similarity::kInnerProduct) return dot;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += static_cast<double>(a[i]) * a[i];
    nb += static_cast<double>(b[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::size_t> retrieve_top_m(std::span<const float> query,
                                        std::span<const PassageVector> passages,
                                        std::size_t m, Similarity kind) {
  struct Scored {
    double score;
    std::size_t id;
  };
  std::vector<Scored> scored;
  scored.reserve(passages.size());
  for (const auto& p : passages) {
    scored.push_back({similarity(query, p.vector, kind), p.passage_id});
  }
  const std::size_t take = std::min(m, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take),
                    scored.end(), [](const Scored& a, const Scored& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.id < b.id;
                    });
  std::vector<std::size_t> ids(take);
  for (std::size_t i = 0; i < take; ++i) ids[i] = scored[i].id;
  return ids;
}

std::vector<std::string> missing_label_embeddings(
    const FeedbackDocument& feedback, std::size_t passage_count, std::size_t k,
    const EmbeddingTable& query_table, const EmbeddingTable& context_table,
    const LabelOptions& options) {
  std::vector<std::string> missing;
  for (const auto& q : make_queries(feedback, k, options.queries)) {
    auto key = q.key();
    if (!query_table.contains(key)) missing.push_back(std::move(key));
  }
  for (std::size_t p = 0; p < passage_count; ++p) {
    auto key = context_key(feedback.doc_id, p);
    if (!context_table.contains(key)) missing.push_back(std::move(key));
  }
  return missing;
}

LabelSet generate_labels(const FeedbackDocument& feedback,
                         std::size_t passage_count, std::size_t k, std::size_t m,
                         const EmbeddingTable& query_table,
                         const EmbeddingTable& context_table,
                         const LabelOptions& options) {
  const auto missing = missing_label_embeddings(feedback, passage_count, k, query_table,
                                                context_table, options);
  if (!missing.empty()) throw Error(ErrorKind::kMissingEmbedding, join_ids(missing));
  if (query_table.dim() != context_table.dim()) {
    throw Error(ErrorKind::kDimMismatch, "query and context tables differ in dim");
  }

  std::vector<PassageVector> passages;
  passages.reserve(passage_count);
  for (std::size_t p = 0; p < passage_count; ++p) {
    passages.push_back({p, *context_table.find(context_key(feedback.doc_id, p))});
  }

  LabelSet labels{feedback.doc_id, {}, k, m};
  for (const auto& q : make_queries(feedback, k, options.queries)) {
    const auto top = retrieve_top_m(*query_table.find(q.key()), passages, m,
                                    options.similarity);
    labels.passages.insert(top.begin(), top.end());
  }
  return labels;
}

void write_label_file(std::ostream& out, const std::vector<LabelSet>& labels) {
  for (const auto& l : labels) {
    out << l.doc_id << '\t' << l.k << '\t' << l.m << '\t';
    bool first = true;
    for (const auto id : l.passages) {
      if (!first) out << ',';
      out << id;
      first = false;
    }
    out << '\n';
  }
}

std::vector<LabelSet> read_label_file(std::istream& in) {
  std::vector<LabelSet> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "label line " + std::to_string(line_no);
    std::vector<std::string> fields;
    std::size_t begin = 0;
    while (true) {
      const auto tab = line.find('\t', begin);
      fields.push_back(line.substr(begin, tab == std::string::npos ? std::string::npos
                                                                    : tab - begin));
      if (tab == std::string::npos) break;
      begin = tab + 1;
    }
    if (fields.size() != 4 || fields[0].empty()) {
      throw Error(ErrorKind::kInvalidDocument, where + ": expected 4 tab-separated fields");
    }
    LabelSet l;
    l.doc_id = fields[0];
    l.k = parse_size(fields[1], where);
    l.m = parse_size(fields[2], where);
    std::stringstream ids(fields[3]);
    std::string id;
    while (std::getline(ids, id, ',')) l.passages.insert(parse_size(id, where));
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<LabelSet> read_label_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  return read_label_file(in);
}

}  // namespace papergraph
