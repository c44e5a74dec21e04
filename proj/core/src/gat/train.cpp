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

#include "papergraph/gat/train.hpp"

#include <algorithm>
#include <cmath>

#include "papergraph/error.hpp"
#include "papergraph/random.hpp"

namespace papergraph::gat {

FeatureMatrix init_node_features(const DocGraph& g, const EmbeddingTable& sentences) {
  FeatureMatrix x = FeatureMatrix::Zero(static_cast<Eigen::Index>(g.node_count()),
                                        static_cast<Eigen::Index>(sentences.dim()));
  for (const auto& node : g.nodes()) {
    if (node.kind != NodeKind::kSentence) continue;
    const auto key = sentence_key(g.doc_id(), node.ref);
    const auto vec = sentences.find(key);
    if (!vec) throw Error(ErrorKind::kMissingEmbedding, key);
    for (std::size_t k = 0; k < vec->size(); ++k) {
      x(static_cast<Eigen::Index>(node.id), static_cast<Eigen::Index>(k)) = (*vec)[k];
    }
  }
  return x;
}

AdamOptimizer::AdamOptimizer(const GatModel<float>& like, const TrainConfig& config)
    : lr_(config.learning_rate),
      beta1_(config.beta1),
      beta2_(config.beta2),
      eps_(config.epsilon),
      first_moment_(zeros_like(like)),
      second_moment_(zeros_like(like)) {}

void AdamOptimizer::step(GatModel<float>& model, const GatModel<float>& grads) {
  ++steps_;
  const double t = static_cast<double>(steps_);
  const float lr = static_cast<float>(lr_);
  const float b1 = static_cast<float>(beta1_);
  const float b2 = static_cast<float>(beta2_);
  const float eps = static_cast<float>(eps_);
  const float c1 = static_cast<float>(1.0 - std::pow(beta1_, t));
  const float c2 = static_cast<float>(1.0 - std::pow(beta2_, t));

  auto params = model.parameters();
  auto g = grads.parameters();
  auto m = first_moment_.parameters();
  auto v = second_moment_.parameters();
  for (std::size_t i = 0; i < params.size(); ++i) {
    float* p = params[i]->data();
    const float* gi = g[i]->data();
    float* mi = m[i]->data();
    float* vi = v[i]->data();
    const auto n = params[i]->size();
    for (Eigen::Index k = 0; k < n; ++k) {
      mi[k] = b1 * mi[k] + (1.0f - b1) * gi[k];
      vi[k] = b2 * vi[k] + (1.0f - b2) * gi[k] * gi[k];
      const float m_hat = mi[k] / c1;
      const float v_hat = vi[k] / c2;
      p[k] -= lr * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
}

double evaluate_loss(const GatModel<float>& model, const std::vector<TrainExample>& dataset,
                     const std::vector<std::size_t>& indices) {
  if (indices.empty()) return 0.0;
  double total = 0.0;
  for (const auto i : indices) {
    const auto& ex = dataset[i];
    const auto targets = passage_targets(ex.graph, ex.labels);
    total += loss_only<float>(model, GraphContext::from_graph(ex.graph), ex.features, targets);
  }
  return total / static_cast<double>(indices.size());
}

TrainResult train(const std::vector<TrainExample>& dataset, const TrainConfig& config,
                  const ModelShape& shape) {
  if (dataset.empty()) throw Error(ErrorKind::kEmptyDataset, "no training documents");
  if (!(config.validation_fraction > 0.0 && config.validation_fraction < 1.0)) {
    throw Error(ErrorKind::kInvalidConfig, "validation fraction must lie in (0, 1)");
  }

  TrainResult result;
  const std::size_t n = dataset.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng split_rng = Rng::derive(config.seed, /*stream=*/2);
  split_rng.shuffle(order.begin(), order.end());
  std::size_t n_val = 0;
  if (n >= 2) {
    n_val = static_cast<std::size_t>(std::llround(static_cast<double>(n) * config.validation_fraction));
    n_val = std::clamp<std::size_t>(n_val, 1, n - 1);
  }
  result.validation_indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  result.train_indices.assign(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
  std::sort(result.validation_indices.begin(), result.validation_indices.end());
  std::sort(result.train_indices.begin(), result.train_indices.end());
  const auto& monitor = n_val > 0 ? result.validation_indices : result.train_indices;

  // Structural inputs are fixed across epochs.
  std::vector<GraphContext> contexts;
  std::vector<std::vector<int>> targets;
  contexts.reserve(n);
  targets.reserve(n);
  for (const auto& ex : dataset) {
    contexts.push_back(GraphContext::from_graph(ex.graph));
    targets.push_back(passage_targets(ex.graph, ex.labels));
    if (ex.features.cols() != static_cast<Eigen::Index>(shape.input_dim)) {
      throw Error(ErrorKind::kShapeMismatch, ex.graph.doc_id() + ": feature width");
    }
  }

  GatModel<float> model = init_model<float>(shape, config.seed);
  result.model = model;
  result.best_epoch = 0;
  result.best_validation_loss = std::numeric_limits<double>::infinity();
  if (config.epochs == 0) {
    result.best_validation_loss = evaluate_loss(model, dataset, monitor);
    return result;
  }

  AdamOptimizer adam(model, config);
  Rng order_rng = Rng::derive(config.seed, /*stream=*/3);
  Rng dropout_rng = Rng::derive(config.seed, /*stream=*/4);
  std::vector<std::size_t> epoch_order = result.train_indices;
  if (epoch_order.empty()) epoch_order = result.validation_indices;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    order_rng.shuffle(epoch_order.begin(), epoch_order.end());
    double train_total = 0.0;
    for (const auto i : epoch_order) {
      const auto step = loss_and_grads<float>(model, contexts[i], dataset[i].features,
                                              targets[i], &dropout_rng);
      train_total += step.loss;
      adam.step(model, step.grads);
    }
    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = train_total / static_cast<double>(epoch_order.size());
    double val_total = 0.0;
    for (const auto i : monitor) {
      val_total += loss_only<float>(model, contexts[i], dataset[i].features, targets[i]);
    }
    record.validation_loss = val_total / static_cast<double>(monitor.size());
    result.history.push_back(record);
    if (record.validation_loss < result.best_validation_loss) {
      result.best_validation_loss = record.validation_loss;
      result.best_epoch = epoch;
      result.model = model;
    }
  }
  return result;
}

std::set<std::size_t> predict_salient(const GatModel<float>& model, const DocGraph& g,
                                      const FeatureMatrix& features) {
  const auto logits = forward<float>(model, g, features);
  std::set<std::size_t> out;
  for (Eigen::Index p = 0; p < logits.rows(); ++p) {
    if (logits(p, 1) > logits(p, 0)) out.insert(static_cast<std::size_t>(p));
  }
  return out;
}

}  // namespace papergraph::gat
