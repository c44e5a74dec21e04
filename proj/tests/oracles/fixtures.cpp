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

#include "fixtures.hpp"

#include "edge_enumerator.hpp"

namespace papergraph::testing {
namespace {

constexpr const char* kWords[] = {"graph", "node", "edge", "model", "layer", "token",
                                  "query", "score", "label", "paper"};

std::string random_sentence(Rng& rng) {
  std::string s = "Word";
  const auto n = 1 + rng.below(5);
  for (std::uint64_t i = 0; i < n; ++i) {
    s += ' ';
    s += kWords[rng.below(10)];
  }
  return s + '.';
}

std::string random_body(Rng& rng) {
  std::string body;
  const auto lines = rng.below(4);
  for (std::uint64_t l = 0; l < lines; ++l) {
    if (rng.below(4) == 0) body += "  \n";  // blank segment, dropped
    const auto sentences = 1 + rng.below(4);
    for (std::uint64_t s = 0; s < sentences; ++s) {
      if (s > 0) body += ' ';
      body += random_sentence(rng);
    }
    body += '\n';
  }
  return body;
}

Section random_section(Rng& rng, int level) {
  Section s;
  s.level = level;
  s.heading_text = "Heading L" + std::to_string(level);
  s.body = random_body(rng);
  const std::uint64_t max_children = level == 1 ? 4 : level == 2 ? 3 : 1;
  const auto children = level >= 4 ? 0 : rng.below(max_children + 1);
  for (std::uint64_t c = 0; c < children; ++c) s.children.push_back(random_section(rng, level + 1));
  return s;
}

}  // namespace

ParsedDocument toy_document() {
  ParsedDocument doc;
  doc.doc_id = "toy";
  doc.title = "A toy paper";
  Section h1{"Introduction", 1, "", {}};
  h1.children.push_back({"Background", 2, "First sentence here. Second sentence here.\nA lone passage.", {}});
  h1.children.push_back({"Motivation", 2, "Why this matters. It matters a lot.", {}});
  Section h2{"Method", 1, "We build a graph.", {}};
  doc.sections = {h1, h2};
  return doc;
}

ParsedDocument thirty_node_document() {
  ParsedDocument doc;
  doc.doc_id = "thirty";
  doc.title = "Thirty nodes";
  Section h1{"Setup", 1,
             "Alpha one. Alpha two. Alpha three.\n"
             "Beta one. Beta two. Beta three. Beta four.\n"
             "Gamma one. Gamma two. Gamma three.",
             {}};
  Section h2{"Results", 1, "Delta one. Delta two. Delta three.", {}};
  h2.children.push_back({"Ablation", 2,
                         "Epsilon one. Epsilon two. Epsilon three. Epsilon four.\n"
                         "Zeta one. Zeta two. Zeta three.",
                         {}});
  doc.sections = {h1, h2};
  return doc;
}

FeedbackDocument toy_feedback() {
  FeedbackDocument fb;
  fb.doc_id = "toy";
  fb.sections[0] = {"The paper builds document graphs.", "It selects passages."};
  fb.sections[1] = {"Clear construction."};
  fb.sections[2] = {"Small evaluation.", "No ablation on depth.", "Few baselines."};
  fb.sections[3] = {"How are ties broken?"};
  return fb;
}

ParsedDocument random_document(Rng& rng, std::size_t max_nodes, const std::string& doc_id) {
  while (true) {
    ParsedDocument doc;
    doc.doc_id = doc_id;
    doc.title = "Random";
    const auto sections = 1 + rng.below(5);
    for (std::uint64_t s = 0; s < sections; ++s) doc.sections.push_back(random_section(rng, 1));
    const auto expected = enumerate_edges(doc);
    if (expected.passages == 0 || expected.node_count > max_nodes) continue;
    return doc;
  }
}

DocGraph random_graph(Rng& rng, std::size_t max_nodes) {
  return build_graph(segment_document(random_document(rng, max_nodes)));
}

gat::ModelShape tiny_shape(std::size_t input_dim) {
  gat::ModelShape s;
  s.input_dim = input_dim;
  s.layer1_width = 3;
  s.layer1_heads = 2;
  s.layer2_width = 2;
  s.layer2_heads = 2;
  s.layer3_width = 5;
  s.layer3_heads = 1;
  s.mlp_hidden = 4;
  s.mlp_projection = 3;
  return s;
}

gat::Matrix<double> random_features(Rng& rng, std::size_t rows, std::size_t cols, double scale) {
  gat::Matrix<double> x(static_cast<long>(rows), static_cast<long>(cols));
  for (long i = 0; i < x.size(); ++i) x.data()[i] = scale * rng.normal();
  return x;
}

LabelSet random_labels(Rng& rng, const DocGraph& g) {
  LabelSet labels;
  labels.doc_id = g.doc_id();
  for (std::size_t p = 0; p < g.passage_nodes().size(); ++p) {
    if (rng.below(2) == 1) labels.passages.insert(p);
  }
  return labels;
}

}  // namespace papergraph::testing
