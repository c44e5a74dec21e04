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
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "papergraph/labels.hpp"
#include "papergraph/prompt.hpp"

namespace papergraph {

// Set precision/recall/F1 of a predicted passage set against its labels.
// Both sets empty scores 1 across the board; an empty side otherwise scores
// 0 for the rate it would divide by.
struct SelectionScore {
  std::string doc_id;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  std::size_t overlap = 0;
};

SelectionScore score_selection(std::string_view doc_id, const std::set<std::size_t>& predicted,
                               const LabelSet& gold);

struct CorpusScore {
  std::vector<SelectionScore> documents;
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  // Pooled over every passage of every document.
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_f1 = 0.0;
};

// Every gold document is scored; a missing prediction counts as empty.
// Predictions for documents without labels raise DocMismatch.
CorpusScore score_corpus(const Selections& predictions, const std::vector<LabelSet>& gold);

void write_scores(std::ostream& out, const CorpusScore& score);

// Selection file: one line per document, doc_id \t comma-separated ids.
void write_selection_file(std::ostream& out, const Selections& selections);
Selections read_selection_file(std::istream& in);
Selections read_selection_file(const std::filesystem::path& path);

}  // namespace papergraph
