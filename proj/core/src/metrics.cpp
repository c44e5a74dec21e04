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

#include "papergraph/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "papergraph/error.hpp"

namespace papergraph {
namespace {

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

}  // namespace

SelectionScore score_selection(std::string_view doc_id, const std::set<std::size_t>& predicted,
                               const LabelSet& gold) {
  if (doc_id != gold.doc_id) {
    throw Error(ErrorKind::kDocMismatch, std::string(doc_id) + " vs " + gold.doc_id);
  }
  SelectionScore s;
  s.doc_id = std::string(doc_id);
  s.predicted = predicted.size();
  s.gold = gold.passages.size();
  for (const auto id : predicted) s.overlap += gold.passages.contains(id) ? 1 : 0;
  if (s.predicted == 0 && s.gold == 0) {
    s.precision = s.recall = s.f1 = 1.0;
    return s;
  }
  s.precision = s.predicted > 0 ? static_cast<double>(s.overlap) / static_cast<double>(s.predicted) : 0.0;
  s.recall = s.gold > 0 ? static_cast<double>(s.overlap) / static_cast<double>(s.gold) : 0.0;
  s.f1 = harmonic(s.precision, s.recall);
  return s;
}

CorpusScore score_corpus(const Selections& predictions, const std::vector<LabelSet>& gold) {
  CorpusScore c;
  std::set<std::string> known;
  std::size_t overlap = 0;
  std::size_t predicted = 0;
  std::size_t labelled = 0;
  for (const auto& g : gold) {
    known.insert(g.doc_id);
    const auto it = predictions.find(g.doc_id);
    const std::set<std::size_t> empty;
    auto s = score_selection(g.doc_id, it == predictions.end() ? empty : it->second, g);
    c.macro_precision += s.precision;
    c.macro_recall += s.recall;
    c.macro_f1 += s.f1;
    overlap += s.overlap;
    predicted += s.predicted;
    labelled += s.gold;
    c.documents.push_back(std::move(s));
  }
  for (const auto& [doc_id, ids] : predictions) {
    if (!known.contains(doc_id)) throw Error(ErrorKind::kDocMismatch, "no labels for " + doc_id);
  }
  std::sort(c.documents.begin(), c.documents.end(),
            [](const SelectionScore& a, const SelectionScore& b) { return a.doc_id < b.doc_id; });
  if (!gold.empty()) {
    const auto n = static_cast<double>(gold.size());
    c.macro_precision /= n;
    c.macro_recall /= n;
    c.macro_f1 /= n;
  }
  if (predicted == 0 && labelled == 0) {
    c.micro_precision = c.micro_recall = c.micro_f1 = 1.0;
  } else {
    c.micro_precision = predicted > 0 ? static_cast<double>(overlap) / static_cast<double>(predicted) : 0.0;
    c.micro_recall = labelled > 0 ? static_cast<double>(overlap) / static_cast<double>(labelled) : 0.0;
    c.micro_f1 = harmonic(c.micro_precision, c.micro_recall);
  }
  return c;
}

void write_scores(std::ostream& out, const CorpusScore& score) {
  const auto flags = out.flags();
  out << std::fixed << std::setprecision(6);
  out << "doc_id\tprecision\trecall\tf1\tpredicted\tgold\n";
  for (const auto& s : score.documents) {
    out << s.doc_id << '\t' << s.precision << '\t' << s.recall << '\t' << s.f1 << '\t'
        << s.predicted << '\t' << s.gold << '\n';
  }
  out << "MACRO\t" << score.macro_precision << '\t' << score.macro_recall << '\t'
      << score.macro_f1 << "\t\t\n";
  out << "MICRO\t" << score.micro_precision << '\t' << score.micro_recall << '\t'
      << score.micro_f1 << "\t\t\n";
  out.flags(flags);
}

void write_selection_file(std::ostream& out, const Selections& selections) {
  for (const auto& [doc_id, ids] : selections) {
    out << doc_id << '\t';
    bool first = true;
    for (const auto id : ids) {
      if (!first) out << ',';
      out << id;
      first = false;
    }
    out << '\n';
  }
}

Selections read_selection_file(std::istream& in) {
  Selections out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || line.find('\t', tab + 1) != std::string::npos) {
      throw Error(ErrorKind::kInvalidDocument,
                  "selection line " + std::to_string(line_no) + ": expected doc_id<TAB>ids");
    }
    auto& ids = out[line.substr(0, tab)];
    std::stringstream list(line.substr(tab + 1));
    std::string id;
    while (std::getline(list, id, ',')) {
      if (id.empty() || id.find_first_not_of("0123456789") != std::string::npos) {
        throw Error(ErrorKind::kInvalidDocument,
                    "selection line " + std::to_string(line_no) + ": bad id \"" + id + "\"");
      }
      ids.insert(static_cast<std::size_t>(std::stoull(id)));
    }
  }
  return out;
}

Selections read_selection_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  return read_selection_file(in);
}

}  // namespace papergraph
