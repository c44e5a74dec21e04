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

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "papergraph/embedding_store.hpp"

namespace papergraph {

enum class FeedbackSection { kSummary = 0, kStrengths, kWeaknesses, kQuestions };

inline constexpr std::array<std::string_view, 4> kFeedbackSectionNames = {
    "summary", "strengths", "weaknesses", "questions"};

// Reference feedback for one document, four sentence lists.
struct FeedbackDocument {
  std::string doc_id;
  std::array<std::vector<std::string>, 4> sections;

  const std::vector<std::string>& section(FeedbackSection s) const {
    return sections[static_cast<std::size_t>(s)];
  }
};

// JSON: {"doc_id": ..., "summary": [...], "strengths": [...],
//        "weaknesses": [...], "questions": [...]}
FeedbackDocument parse_feedback_json(std::string_view json_text);
FeedbackDocument load_feedback(const std::filesystem::path& path);
std::vector<FeedbackDocument> load_feedback_dir(const std::filesystem::path& dir);

struct Query {
  std::string doc_id;
  FeedbackSection section = FeedbackSection::kSummary;
  std::size_t window_index = 0;  // per section
  std::size_t length = 0;        // sentences in the window, 1..k
  std::string text;

  std::string key() const;
};

struct QueryOptions {
  // Stride 1 instead of stride k. Unverified extension.
  bool overlapping = false;
};

// Consecutive windows of k sentences per section, in order; a short final
// window is kept.
std::vector<Query> make_queries(const FeedbackDocument& feedback, std::size_t k,
                                const QueryOptions& options = {});

enum class Similarity { kInnerProduct, kCosine };

struct PassageVector {
  std::size_t passage_id = 0;
  std::span<const float> vector;
};

double similarity(std::span<const float> a, std::span<const float> b,
                  Similarity kind);

// Passages ranked by descending similarity, ties to the smaller id; the
// first min(m, |passages|) ids.
std::vector<std::size_t> retrieve_top_m(std::span<const float> query,
                                        std::span<const PassageVector> passages,
                                        std::size_t m,
                                        Similarity kind = Similarity::kInnerProduct);

struct LabelSet {
  std::string doc_id;
  std::set<std::size_t> passages;
  std::size_t k = 0;
  std::size_t m = 0;

  friend bool operator==(const LabelSet&, const LabelSet&) = default;
};

struct LabelOptions {
  QueryOptions queries;
  Similarity similarity = Similarity::kInnerProduct;
};

// Ids of every query and context embedding generate_labels would read that
// are absent from the tables.
std::vector<std::string> missing_label_embeddings(
    const FeedbackDocument& feedback, std::size_t passage_count, std::size_t k,
    const EmbeddingTable& query_table, const EmbeddingTable& context_table,
    const LabelOptions& options = {});

// Union of the top-m passages over every query window. Throws
// MissingEmbedding naming the absent ids.
LabelSet generate_labels(const FeedbackDocument& feedback,
                         std::size_t passage_count, std::size_t k, std::size_t m,
                         const EmbeddingTable& query_table,
                         const EmbeddingTable& context_table,
                         const LabelOptions& options = {});

// One line per document: doc_id \t k \t m \t comma-separated passage ids.
void write_label_file(std::ostream& out, const std::vector<LabelSet>& labels);
std::vector<LabelSet> read_label_file(std::istream& in);
std::vector<LabelSet> read_label_file(const std::filesystem::path& path);

}  // namespace papergraph
