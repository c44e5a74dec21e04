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

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace papergraph::gat {

template <class T>
using Matrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using FeatureMatrix = Matrix<float>;

// Layer widths and regularization of the passage classifier. The defaults
// are the production architecture:
//   GAT 768 -> 4 x 128 (concat) + linear residual 768 -> 512, ELU, dropout
//   GAT 512 -> 2 x 256 (concat) + linear residual 512 -> 512, ELU, dropout
//   GAT 512 -> 1 x 1024
//   MLP 1024 -> 512, SiLU, dropout, -> 256, LayerNorm, SiLU, -> 2
// Smaller shapes keep the same topology and exist for exhaustive gradient
// checks and fast tests.
struct ModelShape {
  std::size_t input_dim = 768;
  std::size_t layer1_width = 128;
  std::size_t layer1_heads = 4;
  std::size_t layer2_width = 256;
  std::size_t layer2_heads = 2;
  std::size_t layer3_width = 1024;
  std::size_t layer3_heads = 1;
  std::size_t mlp_hidden = 512;
  std::size_t mlp_projection = 256;
  std::size_t classes = 2;
  double gat_dropout = 0.2;
  double mlp_dropout = 0.3;
  double negative_slope = 0.2;
  double norm_eps = 1e-5;

  std::size_t layer1_out() const { return layer1_width * layer1_heads; }
  std::size_t layer2_out() const { return layer2_width * layer2_heads; }
  std::size_t layer3_out() const { return layer3_width * layer3_heads; }

  friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

// Multi-head graph attention layer. Head h owns rows [h*width, (h+1)*width)
// of `weight` (width x in per head) and row h of `attention`, whose first
// `width` entries score the receiving node and last `width` the sender.
template <class T>
struct GatLayer {
  std::size_t heads = 1;
  std::size_t width = 1;
  bool concat = true;
  T negative_slope = T(0.2);
  Matrix<T> weight;     // (heads*width) x in
  Matrix<T> attention;  // heads x (2*width)
  Matrix<T> bias;       // 1 x output width

  std::size_t output_width() const { return concat ? heads * width : width; }
};

template <class T>
struct Linear {
  Matrix<T> weight;  // out x in
  Matrix<T> bias;    // 1 x out
};

template <class T>
struct LayerNorm {
  Matrix<T> gamma;  // 1 x d
  Matrix<T> beta;   // 1 x d
  T eps = T(1e-5);
};

inline constexpr std::size_t kParameterTensorCount = 21;

template <class T>
struct GatModel {
  ModelShape shape;
  GatLayer<T> gat1, gat2, gat3;
  Linear<T> residual1, residual2;
  Linear<T> mlp1, mlp2, mlp3;
  LayerNorm<T> norm;

  // Fixed parameter order shared by checkpoints, optimizers and gradient
  // checks.
  std::array<Matrix<T>*, kParameterTensorCount> parameters();
  std::array<const Matrix<T>*, kParameterTensorCount> parameters() const;
};

const std::array<std::string_view, kParameterTensorCount>& parameter_names();

// Zero-filled model of the given shape.
template <class T>
GatModel<T> make_model(const ModelShape& shape);

// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights, zero biases, unit
// LayerNorm gain. Draw order follows parameters().
template <class T>
GatModel<T> init_model(const ModelShape& shape, std::uint64_t seed);

template <class T>
GatModel<T> zeros_like(const GatModel<T>& model);

template <class To, class From>
GatModel<To> cast_model(const GatModel<From>& model) {
  GatModel<To> out = make_model<To>(model.shape);
  auto dst = out.parameters();
  auto src = model.parameters();
  for (std::size_t i = 0; i < dst.size(); ++i) *dst[i] = src[i]->template cast<To>();
  return out;
}

template <class T>
std::size_t parameter_count(const GatModel<T>& model) {
  std::size_t n = 0;
  for (const auto* p : model.parameters()) n += static_cast<std::size_t>(p->size());
  return n;
}

}  // namespace papergraph::gat
