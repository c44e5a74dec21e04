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
#include <string>
#include <vector>

#include "papergraph/document.hpp"
#include "papergraph/gat/model.hpp"
#include "papergraph/graph.hpp"
#include "papergraph/labels.hpp"
#include "papergraph/random.hpp"

namespace papergraph::testing {

// Two headings, two sub-headings under the first, four passages and six
// sentences.
ParsedDocument toy_document();

// Root, two headings (the second with one sub-heading), six passages and
// twenty sentences: thirty nodes.
ParsedDocument thirty_node_document();

FeedbackDocument toy_feedback();

// Random section tree whose graph has at most `max_nodes` nodes. Sentences
// are "Word word word." units joined by single spaces so their count per
// line equals the number of periods.
ParsedDocument random_document(Rng& rng, std::size_t max_nodes,
                               const std::string& doc_id = "rand");

// Random undirected graph over the five node kinds for model tests: a
// document graph built from a random section tree.
DocGraph random_graph(Rng& rng, std::size_t max_nodes);

// Same topology as the production model at toy widths.
gat::ModelShape tiny_shape(std::size_t input_dim = 6);

// Rows drawn from N(0, scale^2).
gat::Matrix<double> random_features(Rng& rng, std::size_t rows, std::size_t cols, double scale = 1.0);

// Every passage labelled independently with probability 1/2.
LabelSet random_labels(Rng& rng, const DocGraph& g);

}  // namespace papergraph::testing
