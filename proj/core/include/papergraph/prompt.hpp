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
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "papergraph/document.hpp"
#include "papergraph/labels.hpp"

namespace papergraph {

enum class PromptMode { kTrain, kInfer };

struct PromptBundle {
  std::string doc_id;
  std::vector<std::string> passages;  // document order
  std::optional<FeedbackDocument> feedback;
  PromptMode mode = PromptMode::kInfer;
};

// Selected passages in document order; train mode when feedback is given.
// Throws UnknownPassageId for ids outside the document.
PromptBundle make_bundle(const SegmentedDocument& doc, const std::set<std::size_t>& selection,
                         const FeedbackDocument* feedback = nullptr);

// Fine-tuning prompt. Passages are separated by one blank line; infer mode
// stops after the feedback heading line, train mode continues with the four
// bolded feedback sections. Throws EmptySelection when there are no passages
// and InvalidDocument when train mode lacks feedback.
std::string assemble_prompt(const PromptBundle& bundle);

// Whitespace-delimited tokens.
std::size_t count_tokens(std::string_view text);

struct DocumentReduction {
  std::string doc_id;
  std::size_t full_tokens = 0;
  std::size_t selected_tokens = 0;
  std::size_t full_passages = 0;
  std::size_t selected_passages = 0;
};

struct ReductionReport {
  std::vector<DocumentReduction> documents;
  double mean_full_tokens = 0.0;
  double mean_selected_tokens = 0.0;
  double mean_full_passages = 0.0;
  double mean_selected_passages = 0.0;

  // Selected over full tokens across the corpus; 0 for an empty corpus.
  double token_ratio() const;
  double passage_ratio() const;
};

using Selections = std::map<std::string, std::set<std::size_t>>;

// Documents without an entry in `selections` contribute an empty selection.
ReductionReport reduction_report(const std::vector<SegmentedDocument>& docs,
                                 const Selections& selections);

void write_reduction_report(std::ostream& out, const ReductionReport& report);

}  // namespace papergraph
