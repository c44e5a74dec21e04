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
#include <span>
#include <vector>

#include "papergraph/gat/model.hpp"
#include "papergraph/graph.hpp"
#include "papergraph/labels.hpp"
#include "papergraph/random.hpp"

namespace papergraph::gat {

// Attention neighborhoods N(i) plus the self-loop i, sorted, in CSR form,
// and the node rows of the passages in passage-id order.
struct GraphContext {
  std::vector<std::size_t> offsets;  // node_count + 1
  std::vector<std::size_t> columns;
  std::vector<std::size_t> passage_rows;

  static GraphContext from_graph(const DocGraph& g);

  std::size_t node_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::size_t edge_slots() const { return columns.size(); }
};

template <class T>
struct GatLayerCache {
  Matrix<T> input;
  Matrix<T> projected;  // node_count x heads*width
  Matrix<T> scores;     // heads x edge_slots, before LeakyReLU
  Matrix<T> alpha;      // heads x edge_slots, softmax-normalized per node
};

// One attention layer, bias included. Residual, activation and dropout are
// applied by the caller.
template <class T>
Matrix<T> gat_layer_forward(const Matrix<T>& x, const GraphContext& ctx,
                            const GatLayer<T>& layer, GatLayerCache<T>* cache = nullptr);

// Accumulates parameter gradients into `grads` and returns d(loss)/d(input).
template <class T>
Matrix<T> gat_layer_backward(const Matrix<T>& grad_out, const GraphContext& ctx,
                             const GatLayer<T>& layer, const GatLayerCache<T>& cache,
                             GatLayer<T>& grads);

template <class T>
struct ForwardCache {
  GatLayerCache<T> gat1, gat2, gat3;
  Matrix<T> input;
  Matrix<T> pre1, mask1, out1;
  Matrix<T> pre2, mask2, out2;
  Matrix<T> passages;
  Matrix<T> hidden1, mask3, dropped1;
  Matrix<T> hidden2, normalized, inv_std, projected;
};

// Passage logits (passage_count x classes) in passage-id order. Dropout is
// active iff `dropout_rng` is non-null; masks are drawn row-major in layer
// order, so a copied generator reproduces them exactly.
template <class T>
Matrix<T> forward(const GatModel<T>& model, const GraphContext& ctx, const Matrix<T>& x,
                  Rng* dropout_rng = nullptr, ForwardCache<T>* cache = nullptr);

template <class T>
Matrix<T> forward(const GatModel<T>& model, const DocGraph& g, const Matrix<T>& x,
                  Rng* dropout_rng = nullptr) {
  return forward(model, GraphContext::from_graph(g), x, dropout_rng);
}

// Per-passage class (1 = salient) in passage-id order; LabelOutOfRange when
// a label names a passage the graph does not have.
std::vector<int> passage_targets(const DocGraph& g, const LabelSet& labels);

// Mean cross-entropy; fills d(loss)/d(logits) when `grad` is non-null.
template <class T>
T cross_entropy(const Matrix<T>& logits, std::span<const int> targets,
                Matrix<T>* grad = nullptr);

template <class T>
struct LossAndGrads {
  T loss{};
  GatModel<T> grads;
  Matrix<T> logits;
};

template <class T>
LossAndGrads<T> loss_and_grads(const GatModel<T>& model, const GraphContext& ctx,
                               const Matrix<T>& x, std::span<const int> targets,
                               Rng* dropout_rng = nullptr);

template <class T>
T loss_only(const GatModel<T>& model, const GraphContext& ctx, const Matrix<T>& x,
            std::span<const int> targets, Rng* dropout_rng = nullptr);

}  // namespace papergraph::gat
