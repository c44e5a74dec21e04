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

#include "papergraph/gat/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "papergraph/error.hpp"

namespace papergraph::gat {
namespace {

using Eigen::Index;

template <class T>
using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

[[noreturn]] void shape_error(const std::string& what) {
  throw Error(ErrorKind::kShapeMismatch, what);
}

template <class T>
Matrix<T> linear_forward(const Linear<T>& l, const Matrix<T>& x) {
  if (x.cols() != l.weight.cols()) shape_error("linear input width");
  Matrix<T> y = x * l.weight.transpose();
  y.rowwise() += l.bias.row(0);
  return y;
}

template <class T>
Matrix<T> linear_backward(const Linear<T>& l, const Matrix<T>& x, const Matrix<T>& gy,
                          Linear<T>& grads) {
  grads.weight.noalias() += gy.transpose() * x;
  grads.bias += gy.colwise().sum();
  return gy * l.weight;
}

template <class T>
T elu(T v) {
  return v > T(0) ? v : std::expm1(v);
}

template <class T>
T elu_grad(T v) {
  return v > T(0) ? T(1) : std::exp(v);
}

template <class T>
T sigmoid(T v) {
  return T(1) / (T(1) + std::exp(-v));
}

template <class T>
T silu(T v) {
  return v * sigmoid(v);
}

template <class T>
T silu_grad(T v) {
  const T s = sigmoid(v);
  return s * (T(1) + v * (T(1) - s));
}

// Inverted dropout; `mask` receives 0 or 1/(1-p) per element.
template <class T>
void dropout(Matrix<T>& m, double p, Rng& rng, Matrix<T>& mask) {
  mask.resize(m.rows(), m.cols());
  const T scale = static_cast<T>(1.0 / (1.0 - p));
  for (Index i = 0; i < m.size(); ++i) {
    mask.data()[i] = rng.uniform() < p ? T(0) : scale;
  }
  m.array() *= mask.array();
}

}  // namespace

GraphContext GraphContext::from_graph(const DocGraph& g) {
  GraphContext ctx;
  const std::size_t n = g.node_count();
  ctx.offsets.reserve(n + 1);
  ctx.offsets.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& nb = g.neighbors(i);
    auto pos = std::lower_bound(nb.begin(), nb.end(), i);
    ctx.columns.insert(ctx.columns.end(), nb.begin(), pos);
    ctx.columns.push_back(i);
    ctx.columns.insert(ctx.columns.end(), pos, nb.end());
    ctx.offsets.push_back(ctx.columns.size());
  }
  ctx.passage_rows = g.passage_nodes();
  for (const auto row : ctx.passage_rows) {
    if (row >= n) shape_error("passage ids are not contiguous");
  }
  return ctx;
}

template <class T>
Matrix<T> gat_layer_forward(const Matrix<T>& x, const GraphContext& ctx,
                            const GatLayer<T>& layer, GatLayerCache<T>* cache) {
  const auto n = static_cast<Index>(ctx.node_count());
  if (x.rows() != n) shape_error("feature rows != node count");
  if (x.cols() != layer.weight.cols()) shape_error("feature width != layer input width");
  const auto heads = static_cast<Index>(layer.heads);
  const auto width = static_cast<Index>(layer.width);
  const auto slots = static_cast<Index>(ctx.edge_slots());

  Matrix<T> z = x * layer.weight.transpose();
  Matrix<T> scores(heads, slots);
  Matrix<T> alpha(heads, slots);
  Matrix<T> out = Matrix<T>::Zero(n, heads * width);

  for (Index h = 0; h < heads; ++h) {
    const auto zh = z.middleCols(h * width, width);
    const Vector<T> target_score = zh * layer.attention.row(h).head(width).transpose();
    const Vector<T> source_score = zh * layer.attention.row(h).tail(width).transpose();
    for (Index i = 0; i < n; ++i) {
      const auto begin = static_cast<Index>(ctx.offsets[i]);
      const auto end = static_cast<Index>(ctx.offsets[i + 1]);
      T peak = -std::numeric_limits<T>::infinity();
      for (Index s = begin; s < end; ++s) {
        const auto j = static_cast<Index>(ctx.columns[s]);
        const T raw = target_score[i] + source_score[j];
        scores(h, s) = raw;
        const T e = raw > T(0) ? raw : layer.negative_slope * raw;
        alpha(h, s) = e;
        peak = std::max(peak, e);
      }
      T total = T(0);
      for (Index s = begin; s < end; ++s) {
        alpha(h, s) = std::exp(alpha(h, s) - peak);
        total += alpha(h, s);
      }
      for (Index s = begin; s < end; ++s) {
        alpha(h, s) /= total;
        const auto j = static_cast<Index>(ctx.columns[s]);
        out.row(i).segment(h * width, width) += alpha(h, s) * z.row(j).segment(h * width, width);
      }
    }
  }

  if (!layer.concat && heads > 1) {
    Matrix<T> mean = Matrix<T>::Zero(n, width);
    for (Index h = 0; h < heads; ++h) mean += out.middleCols(h * width, width);
    out = mean / static_cast<T>(heads);
  }
  out.rowwise() += layer.bias.row(0);

  if (cache != nullptr) {
    cache->input = x;
    cache->projected = std::move(z);
    cache->scores = std::move(scores);
    cache->alpha = std::move(alpha);
  }
  return out;
}

template <class T>
Matrix<T> gat_layer_backward(const Matrix<T>& grad_out, const GraphContext& ctx,
                             const GatLayer<T>& layer, const GatLayerCache<T>& cache,
                             GatLayer<T>& grads) {
  const auto n = static_cast<Index>(ctx.node_count());
  const auto heads = static_cast<Index>(layer.heads);
  const auto width = static_cast<Index>(layer.width);
  const Matrix<T>& z = cache.projected;

  grads.bias += grad_out.colwise().sum();

  Matrix<T> per_head;
  if (!layer.concat && heads > 1) {
    per_head.resize(n, heads * width);
    for (Index h = 0; h < heads; ++h) {
      per_head.middleCols(h * width, width) = grad_out / static_cast<T>(heads);
    }
  }
  const Matrix<T>& go = per_head.size() > 0 ? per_head : grad_out;

  Matrix<T> gz = Matrix<T>::Zero(n, heads * width);
  Vector<T> d_target(n);
  Vector<T> d_source(n);
  std::vector<T> d_alpha;
  for (Index h = 0; h < heads; ++h) {
    d_target.setZero();
    d_source.setZero();
    for (Index i = 0; i < n; ++i) {
      const auto begin = static_cast<Index>(ctx.offsets[i]);
      const auto end = static_cast<Index>(ctx.offsets[i + 1]);
      const auto gi = go.row(i).segment(h * width, width);
      d_alpha.assign(static_cast<std::size_t>(end - begin), T(0));
      T weighted = T(0);
      for (Index s = begin; s < end; ++s) {
        const auto j = static_cast<Index>(ctx.columns[s]);
        const T da = gi.dot(z.row(j).segment(h * width, width));
        d_alpha[static_cast<std::size_t>(s - begin)] = da;
        weighted += cache.alpha(h, s) * da;
        gz.row(j).segment(h * width, width) += cache.alpha(h, s) * gi;
      }
      for (Index s = begin; s < end; ++s) {
        const auto j = static_cast<Index>(ctx.columns[s]);
        const T de = cache.alpha(h, s) * (d_alpha[static_cast<std::size_t>(s - begin)] - weighted);
        const T draw = cache.scores(h, s) > T(0) ? de : layer.negative_slope * de;
        d_target[i] += draw;
        d_source[j] += draw;
      }
    }
    const auto a_target = layer.attention.row(h).head(width);
    const auto a_source = layer.attention.row(h).tail(width);
    const auto zh = z.middleCols(h * width, width);
    gz.middleCols(h * width, width).noalias() += d_target * a_target + d_source * a_source;
    grads.attention.row(h).head(width) += d_target.transpose() * zh;
    grads.attention.row(h).tail(width) += d_source.transpose() * zh;
  }

  grads.weight.noalias() += gz.transpose() * cache.input;
  return gz * layer.weight;
}

template <class T>
Matrix<T> forward(const GatModel<T>& model, const GraphContext& ctx, const Matrix<T>& x,
                  Rng* dropout_rng, ForwardCache<T>* cache) {
  const auto& s = model.shape;
  if (x.cols() != static_cast<Index>(s.input_dim)) shape_error("feature width != model input");
  ForwardCache<T> local;
  ForwardCache<T>& c = cache != nullptr ? *cache : local;

  c.input = x;
  c.pre1 = gat_layer_forward(x, ctx, model.gat1, &c.gat1) + linear_forward(model.residual1, x);
  c.out1 = c.pre1.unaryExpr([](T v) { return elu(v); });
  c.mask1.resize(0, 0);
  if (dropout_rng != nullptr && s.gat_dropout > 0) dropout(c.out1, s.gat_dropout, *dropout_rng, c.mask1);

  c.pre2 = gat_layer_forward(c.out1, ctx, model.gat2, &c.gat2) +
           linear_forward(model.residual2, c.out1);
  c.out2 = c.pre2.unaryExpr([](T v) { return elu(v); });
  c.mask2.resize(0, 0);
  if (dropout_rng != nullptr && s.gat_dropout > 0) dropout(c.out2, s.gat_dropout, *dropout_rng, c.mask2);

  const Matrix<T> node_out = gat_layer_forward(c.out2, ctx, model.gat3, &c.gat3);
  c.passages.resize(static_cast<Index>(ctx.passage_rows.size()), node_out.cols());
  for (std::size_t p = 0; p < ctx.passage_rows.size(); ++p) {
    c.passages.row(static_cast<Index>(p)) = node_out.row(static_cast<Index>(ctx.passage_rows[p]));
  }

  c.hidden1 = linear_forward(model.mlp1, c.passages);
  c.dropped1 = c.hidden1.unaryExpr([](T v) { return silu(v); });
  c.mask3.resize(0, 0);
  if (dropout_rng != nullptr && s.mlp_dropout > 0) dropout(c.dropped1, s.mlp_dropout, *dropout_rng, c.mask3);

  c.hidden2 = linear_forward(model.mlp2, c.dropped1);
  const Index rows = c.hidden2.rows();
  const Index cols = c.hidden2.cols();
  c.normalized.resize(rows, cols);
  c.inv_std.resize(rows, 1);
  for (Index r = 0; r < rows; ++r) {
    const T mean = c.hidden2.row(r).mean();
    const T var = (c.hidden2.row(r).array() - mean).square().mean();
    const T inv = T(1) / std::sqrt(var + model.norm.eps);
    c.inv_std(r, 0) = inv;
    c.normalized.row(r) = (c.hidden2.row(r).array() - mean) * inv;
  }
  c.projected = c.normalized.array().rowwise() * model.norm.gamma.row(0).array();
  c.projected.rowwise() += model.norm.beta.row(0);
  const Matrix<T> activated = c.projected.unaryExpr([](T v) { return silu(v); });
  return linear_forward(model.mlp3, activated);
}

std::vector<int> passage_targets(const DocGraph& g, const LabelSet& labels) {
  if (!labels.doc_id.empty() && labels.doc_id != g.doc_id()) {
    throw Error(ErrorKind::kDocMismatch, labels.doc_id + " vs " + g.doc_id());
  }
  std::vector<int> targets(g.passage_nodes().size(), 0);
  for (const auto id : labels.passages) {
    if (id >= targets.size()) {
      throw Error(ErrorKind::kLabelOutOfRange,
                  g.doc_id() + ": passage " + std::to_string(id) + " of " +
                      std::to_string(targets.size()));
    }
    targets[id] = 1;
  }
  return targets;
}

template <class T>
T cross_entropy(const Matrix<T>& logits, std::span<const int> targets, Matrix<T>* grad) {
  const Index rows = logits.rows();
  if (static_cast<std::size_t>(rows) != targets.size()) shape_error("targets != passage rows");
  if (grad != nullptr) grad->setZero(rows, logits.cols());
  if (rows == 0) return T(0);
  T total = T(0);
  for (Index r = 0; r < rows; ++r) {
    const int y = targets[static_cast<std::size_t>(r)];
    if (y < 0 || y >= logits.cols()) {
      throw Error(ErrorKind::kLabelOutOfRange, "class " + std::to_string(y));
    }
    const T peak = logits.row(r).maxCoeff();
    const T sum = (logits.row(r).array() - peak).exp().sum();
    total += peak + std::log(sum) - logits(r, y);
    if (grad != nullptr) {
      grad->row(r) = (logits.row(r).array() - peak).exp() / sum;
      (*grad)(r, y) -= T(1);
    }
  }
  if (grad != nullptr) *grad /= static_cast<T>(rows);
  return total / static_cast<T>(rows);
}

template <class T>
LossAndGrads<T> loss_and_grads(const GatModel<T>& model, const GraphContext& ctx,
                               const Matrix<T>& x, std::span<const int> targets,
                               Rng* dropout_rng) {
  ForwardCache<T> c;
  LossAndGrads<T> result;
  result.logits = forward(model, ctx, x, dropout_rng, &c);
  result.grads = zeros_like(model);
  auto& g = result.grads;

  Matrix<T> d_logits;
  result.loss = cross_entropy<T>(result.logits, targets, &d_logits);

  const Matrix<T> activated = c.projected.unaryExpr([](T v) { return silu(v); });
  const Matrix<T> d_activated = linear_backward(model.mlp3, activated, d_logits, g.mlp3);
  const Matrix<T> d_projected =
      d_activated.array() * c.projected.unaryExpr([](T v) { return silu_grad(v); }).array();

  g.norm.gamma += (d_projected.array() * c.normalized.array()).colwise().sum().matrix();
  g.norm.beta += d_projected.colwise().sum();
  const Matrix<T> d_normalized =
      d_projected.array().rowwise() * model.norm.gamma.row(0).array();
  Matrix<T> d_hidden2(d_normalized.rows(), d_normalized.cols());
  for (Index r = 0; r < d_normalized.rows(); ++r) {
    const T mean_d = d_normalized.row(r).mean();
    const T mean_dx = (d_normalized.row(r).array() * c.normalized.row(r).array()).mean();
    d_hidden2.row(r) = c.inv_std(r, 0) *
                       (d_normalized.row(r).array() - mean_d - c.normalized.row(r).array() * mean_dx);
  }

  Matrix<T> d_dropped1 = linear_backward(model.mlp2, c.dropped1, d_hidden2, g.mlp2);
  if (c.mask3.size() > 0) d_dropped1.array() *= c.mask3.array();
  const Matrix<T> d_hidden1 =
      d_dropped1.array() * c.hidden1.unaryExpr([](T v) { return silu_grad(v); }).array();
  const Matrix<T> d_passages = linear_backward(model.mlp1, c.passages, d_hidden1, g.mlp1);

  Matrix<T> d_node_out = Matrix<T>::Zero(static_cast<Index>(ctx.node_count()), d_passages.cols());
  for (std::size_t p = 0; p < ctx.passage_rows.size(); ++p) {
    d_node_out.row(static_cast<Index>(ctx.passage_rows[p])) += d_passages.row(static_cast<Index>(p));
  }

  Matrix<T> d_out2 = gat_layer_backward(d_node_out, ctx, model.gat3, c.gat3, g.gat3);
  if (c.mask2.size() > 0) d_out2.array() *= c.mask2.array();
  const Matrix<T> d_pre2 =
      d_out2.array() * c.pre2.unaryExpr([](T v) { return elu_grad(v); }).array();

  Matrix<T> d_out1 = gat_layer_backward(d_pre2, ctx, model.gat2, c.gat2, g.gat2);
  d_out1 += linear_backward(model.residual2, c.gat2.input, d_pre2, g.residual2);
  if (c.mask1.size() > 0) d_out1.array() *= c.mask1.array();
  const Matrix<T> d_pre1 =
      d_out1.array() * c.pre1.unaryExpr([](T v) { return elu_grad(v); }).array();

  gat_layer_backward(d_pre1, ctx, model.gat1, c.gat1, g.gat1);
  linear_backward(model.residual1, c.input, d_pre1, g.residual1);
  return result;
}

template <class T>
T loss_only(const GatModel<T>& model, const GraphContext& ctx, const Matrix<T>& x,
            std::span<const int> targets, Rng* dropout_rng) {
  return cross_entropy<T>(forward(model, ctx, x, dropout_rng), targets);
}

#define PAPERGRAPH_INSTANTIATE(T)                                                          \
  template Matrix<T> gat_layer_forward<T>(const Matrix<T>&, const GraphContext&,          \
                                          const GatLayer<T>&, GatLayerCache<T>*);          \
  template Matrix<T> gat_layer_backward<T>(const Matrix<T>&, const GraphContext&,         \
                                           const GatLayer<T>&, const GatLayerCache<T>&,    \
                                           GatLayer<T>&);                                  \
  template Matrix<T> forward<T>(const GatModel<T>&, const GraphContext&, const Matrix<T>&, \
                                Rng*, ForwardCache<T>*);                                   \
  template T cross_entropy<T>(const Matrix<T>&, std::span<const int>, Matrix<T>*);        \
  template LossAndGrads<T> loss_and_grads<T>(const GatModel<T>&, const GraphContext&,     \
                                             const Matrix<T>&, std::span<const int>,       \
                                             Rng*);                                        \
  template T loss_only<T>(const GatModel<T>&, const GraphContext&, const Matrix<T>&,      \
                          std::span<const int>, Rng*);

PAPERGRAPH_INSTANTIATE(float)
PAPERGRAPH_INSTANTIATE(double)

#undef PAPERGRAPH_INSTANTIATE

}  // namespace papergraph::gat
