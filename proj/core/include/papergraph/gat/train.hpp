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
#include <set>
#include <string>
#include <vector>

#include "papergraph/embedding_store.hpp"
#include "papergraph/gat/model.hpp"
#include "papergraph/gat/network.hpp"
#include "papergraph/graph.hpp"
#include "papergraph/labels.hpp"

namespace papergraph::gat {

// Sentence rows carry their embeddings; every other row is zero.
FeatureMatrix init_node_features(const DocGraph& g, const EmbeddingTable& sentences);

struct TrainConfig {
  std::size_t epochs = 30;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
  double validation_fraction = 0.1;
};

struct TrainExample {
  DocGraph graph;
  FeatureMatrix features;
  LabelSet labels;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double validation_loss = 0.0;
};

struct TrainResult {
  GatModel<float> model;  // best-validation checkpoint
  std::vector<EpochRecord> history;
  std::size_t best_epoch = 0;  // 0 when no epoch ran
  double best_validation_loss = 0.0;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> validation_indices;
};

// Adam, one update per document graph. After every epoch the validation loss
// is computed without dropout and the lowest-loss parameters are retained.
// When the dataset has a single document there is no validation split and the
// training loss stands in for it.
TrainResult train(const std::vector<TrainExample>& dataset, const TrainConfig& config,
                  const ModelShape& shape = {});

// Mean validation-mode loss over the given examples.
double evaluate_loss(const GatModel<float>& model, const std::vector<TrainExample>& dataset,
                     const std::vector<std::size_t>& indices);

// Passage ids whose class-1 logit strictly exceeds the class-0 logit.
std::set<std::size_t> predict_salient(const GatModel<float>& model, const DocGraph& g,
                                      const FeatureMatrix& features);

class AdamOptimizer {
 public:
  AdamOptimizer(const GatModel<float>& like, const TrainConfig& config);

  void step(GatModel<float>& model, const GatModel<float>& grads);
  std::size_t steps() const { return steps_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::size_t steps_ = 0;
  GatModel<float> first_moment_;
  GatModel<float> second_moment_;
};

}  // namespace papergraph::gat
