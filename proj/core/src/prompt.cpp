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

#include "papergraph/prompt.hpp"

#include <cctype>
#include <iomanip>
#include <ostream>

#include "papergraph/error.hpp"

namespace papergraph {
namespace {

constexpr std::string_view kInstructionBlock =
    "Below is an instruction that describes a task,\n"
    "paired with an input that provides further\n"
    "context. Write a response that appropriately\n"
    "completes the request.\n"
    "\n"
    "### Instruction:\n"
    "\n"
    "Generate a structured feedback for the research\n"
    "paper passages provided below. The feedback\n"
    "should include a summary of the paper, its\n"
    "strengths, weaknesses, and questions for\n"
    "the authors. Consider that the feedback is being\n"
    "given for a paper submitted to the ICLR conference.\n"
    "\n"
    "### Research Paper Passages:\n"
    "\n";

constexpr std::string_view kFeedbackHeading = "### Feedback for the paper:\n";

constexpr std::string_view kSectionTitles[] = {"**Summary**", "**Strengths**",
                                               "**Weaknesses**", "**Questions**"};

std::string join_sentences(const std::vector<std::string>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    if (!out.empty()) out += ' ';
    out += s;
  }
  return out;
}

}  // namespace

PromptBundle make_bundle(const SegmentedDocument& doc, const std::set<std::size_t>& selection,
                         const FeedbackDocument* feedback) {
  PromptBundle b;
  b.doc_id = doc.doc_id;
  for (const auto id : selection) {
    if (id >= doc.passages.size()) {
      throw Error(ErrorKind::kUnknownPassageId, doc.doc_id + ": passage " + std::to_string(id));
    }
    b.passages.push_back(doc.passages[id].text);
  }
  if (feedback != nullptr) {
    if (feedback->doc_id != doc.doc_id) {
      throw Error(ErrorKind::kDocMismatch, feedback->doc_id + " vs " + doc.doc_id);
    }
    b.feedback = *feedback;
    b.mode = PromptMode::kTrain;
  }
  return b;
}

std::string assemble_prompt(const PromptBundle& bundle) {
  if (bundle.passages.empty()) throw Error(ErrorKind::kEmptySelection, bundle.doc_id);
  std::string out(kInstructionBlock);
  for (const auto& p : bundle.passages) {
    out += p;
    out += "\n\n";
  }
  out += kFeedbackHeading;
  if (bundle.mode == PromptMode::kInfer) return out;

  if (!bundle.feedback) {
    throw Error(ErrorKind::kInvalidDocument, bundle.doc_id + ": train mode without feedback");
  }
  for (std::size_t s = 0; s < 4; ++s) {
    out += '\n';
    out += kSectionTitles[s];
    out += "\n\n";
    out += join_sentences(bundle.feedback->sections[s]);
    out += '\n';
  }
  return out;
}

std::size_t count_tokens(std::string_view text) {
  std::size_t n = 0;
  bool in_token = false;
  for (const char c : text) {
    const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_token) ++n;
    in_token = !space;
  }
  return n;
}

double ReductionReport::token_ratio() const {
  return mean_full_tokens > 0.0 ? mean_selected_tokens / mean_full_tokens : 0.0;
}

double ReductionReport::passage_ratio() const {
  return mean_full_passages > 0.0 ? mean_selected_passages / mean_full_passages : 0.0;
}

ReductionReport reduction_report(const std::vector<SegmentedDocument>& docs,
                                 const Selections& selections) {
  ReductionReport r;
  std::set<std::string> known;
  for (const auto& doc : docs) {
    known.insert(doc.doc_id);
    DocumentReduction d;
    d.doc_id = doc.doc_id;
    d.full_passages = doc.passages.size();
    for (const auto& p : doc.passages) d.full_tokens += count_tokens(p.text);
    if (const auto it = selections.find(doc.doc_id); it != selections.end()) {
      for (const auto id : it->second) {
        if (id >= doc.passages.size()) {
          throw Error(ErrorKind::kUnknownPassageId,
                      doc.doc_id + ": passage " + std::to_string(id));
        }
        d.selected_tokens += count_tokens(doc.passages[id].text);
        ++d.selected_passages;
      }
    }
    r.mean_full_tokens += static_cast<double>(d.full_tokens);
    r.mean_selected_tokens += static_cast<double>(d.selected_tokens);
    r.mean_full_passages += static_cast<double>(d.full_passages);
    r.mean_selected_passages += static_cast<double>(d.selected_passages);
    r.documents.push_back(std::move(d));
  }
  for (const auto& [doc_id, ids] : selections) {
    if (!known.contains(doc_id)) {
      throw Error(ErrorKind::kUnknownPassageId, "selection for unknown document " + doc_id);
    }
  }
  if (!docs.empty()) {
    const auto n = static_cast<double>(docs.size());
    r.mean_full_tokens /= n;
    r.mean_selected_tokens /= n;
    r.mean_full_passages /= n;
    r.mean_selected_passages /= n;
  }
  return r;
}

void write_reduction_report(std::ostream& out, const ReductionReport& report) {
  out << "doc_id\tfull_tokens\tselected_tokens\tfull_passages\tselected_passages\n";
  for (const auto& d : report.documents) {
    out << d.doc_id << '\t' << d.full_tokens << '\t' << d.selected_tokens << '\t'
        << d.full_passages << '\t' << d.selected_passages << '\n';
  }
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(2) << "MEAN\t" << report.mean_full_tokens << '\t'
      << report.mean_selected_tokens << '\t' << report.mean_full_passages << '\t'
      << report.mean_selected_passages << '\n';
  out.flags(flags);
}

}  // namespace papergraph
