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

#include "papergraph/gat/model.hpp"

#include <cmath>

#include "papergraph/random.hpp"

namespace papergraph::gat {
namespace {

template <class T>
GatLayer<T> make_gat(std::size_t in, std::size_t width, std::size_t heads,
                     bool concat, double slope) {
  GatLayer<T> l;
  l.heads = heads;
  l.width = width;
  l.concat = concat;
  l.negative_slope = static_cast<T>(slope);
  l.weight = Matrix<T>::Zero(heads * width, in);
  l.attention = Matrix<T>::Zero(heads, 2 * width);
  l.bias = Matrix<T>::Zero(1, l.output_width());
  return l;
}

template <class T>
Linear<T> make_linear(std::size_t in, std::size_t out) {
  return {Matrix<T>::Zero(out, in), Matrix<T>::Zero(1, out)};
}

template <class T>
void fill_uniform(Matrix<T>& m, double bound, Rng& rng) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = static_cast<T>(rng.uniform(-bound, bound));
  }
}

}  // namespace

template <class T>
std::array<Matrix<T>*, kParameterTensorCount> GatModel<T>::parameters() {
  return {&gat1.weight,  &gat1.attention, &gat1.bias,    &residual1.weight,
          &residual1.bias, &gat2.weight,  &gat2.attention, &gat2.bias,
          &residual2.weight, &residual2.bias, &gat3.weight, &gat3.attention,
          &gat3.bias,    &mlp1.weight,    &mlp1.bias,    &mlp2.weight,
          &mlp2.bias,    &norm.gamma,     &norm.beta,    &mlp3.weight,
          &mlp3.bias};
}

template <class T>
std::array<const Matrix<T>*, kParameterTensorCount> GatModel<T>::parameters() const {
  auto mutable_params = const_cast<GatModel<T>*>(this)->parameters();
  std::array<const Matrix<T>*, kParameterTensorCount> out{};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mutable_params[i];
  return out;
}

const std::array<std::string_view, kParameterTensorCount>& parameter_names() {
  static const std::array<std::string_view, kParameterTensorCount> names = {
      "gat1.weight",      "gat1.attention", "gat1.bias",      "residual1.weight",
      "residual1.bias",   "gat2.weight",    "gat2.attention", "gat2.bias",
      "residual2.weight", "residual2.bias", "gat3.weight",    "gat3.attention",
      "gat3.bias",        "mlp1.weight",    "mlp1.bias",      "mlp2.weight",
      "mlp2.bias",        "norm.gamma",     "norm.beta",      "mlp3.weight",
      "mlp3.bias"};
  return names;
}

template <class T>
GatModel<T> make_model(const ModelShape& s) {
  GatModel<T> m;
  m.shape = s;
  m.gat1 = make_gat<T>(s.input_dim, s.layer1_width, s.layer1_heads, true, s.negative_slope);
  m.residual1 = make_linear<T>(s.input_dim, s.layer1_out());
  m.gat2 = make_gat<T>(s.layer1_out(), s.layer2_width, s.layer2_heads, true,
                       s.negative_slope);
  m.residual2 = make_linear<T>(s.layer1_out(), s.layer2_out());
  m.gat3 = make_gat<T>(s.layer2_out(), s.layer3_width, s.layer3_heads, true,
                       s.negative_slope);
  m.mlp1 = make_linear<T>(s.layer3_out(), s.mlp_hidden);
  m.mlp2 = make_linear<T>(s.mlp_hidden, s.mlp_projection);
  m.norm.gamma = Matrix<T>::Ones(1, s.mlp_projection);
  m.norm.beta = Matrix<T>::Zero(1, s.mlp_projection);
  m.norm.eps = static_cast<T>(s.norm_eps);
  m.mlp3 = make_linear<T>(s.mlp_projection, s.classes);
  return m;
}

template <class T>
GatModel<T> init_model(const ModelShape& shape, std::uint64_t seed) {
  GatModel<T> m = make_model<T>(shape);
  Rng rng = Rng::derive(seed, /*stream=*/1);
  auto fan_in_init = [&](Matrix<T>& w) {
    fill_uniform(w, 1.0 / std::sqrt(static_cast<double>(w.cols())), rng);
  };
  auto attention_init = [&](GatLayer<T>& l) {
    fill_uniform(l.attention, 1.0 / std::sqrt(static_cast<double>(l.width)), rng);
  };
  fan_in_init(m.gat1.weight);
  attention_init(m.gat1);
  fan_in_init(m.residual1.weight);
  fan_in_init(m.gat2.weight);
  attention_init(m.gat2);
  fan_in_init(m.residual2.weight);
  fan_in_init(m.gat3.weight);
  attention_init(m.gat3);
  fan_in_init(m.mlp1.weight);
  fan_in_init(m.mlp2.weight);
  fan_in_init(m.mlp3.weight);
  return m;
}

template <class T>
GatModel<T> zeros_like(const GatModel<T>& model) {
  GatModel<T> out = make_model<T>(model.shape);
  for (auto* p : out.parameters()) p->setZero();
  return out;
}

template struct GatModel<float>;
template struct GatModel<double>;
template GatModel<float> make_model<float>(const ModelShape&);
template GatModel<double> make_model<double>(const ModelShape&);
template GatModel<float> init_model<float>(const ModelShape&, std::uint64_t);
template GatModel<double> init_model<double>(const ModelShape&, std::uint64_t);
template GatModel<float> zeros_like<float>(const GatModel<float>&);
template GatModel<double> zeros_like<double>(const GatModel<double>&);

}  // namespace papergraph::gat
