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
#include <string_view>
#include <vector>

#include "papergraph/document.hpp"
#include "papergraph/embedding_store.hpp"
#include "papergraph/labels.hpp"

namespace papergraph {

// Planted-signal corpus: salient passages' sentence embeddings are
// `signal` * u + N(0, noise^2) per component for one fixed unit direction u;
// every other sentence is pure N(0, noise^2) noise.
struct SyntheticConfig {
  std::size_t documents = 50;
  std::size_t min_passages = 8;
  std::size_t max_passages = 20;
  std::size_t min_sentences = 4;
  std::size_t max_sentences = 8;
  double salient_fraction = 0.35;
  double signal = 0.8;
  double noise = 0.3;
  std::uint32_t dim = 768;
  std::uint64_t seed = 7;
};

struct SyntheticCorpus {
  std::vector<ParsedDocument> documents;
  std::vector<FeedbackDocument> feedback;
  std::vector<LabelSet> labels;  // planted salient passages, k = m = 0
  EmbeddingTable sentences{EmbeddingRole::kSentence, 1};
};

SyntheticCorpus make_planted_corpus(const SyntheticConfig& config);

// Seeded pseudo-random unit vector derived from (seed, id). Stands in for
// encoder output in fixtures, like the embedding sidecar's fake mode.
std::vector<float> fake_unit_vector(std::string_view id, std::uint32_t dim, std::uint64_t seed);

}  // namespace papergraph
