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

#include "papergraph/gat/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "papergraph/random.hpp"

namespace papergraph::gat {

bool GradientCheckReport::passed() const {
  return std::all_of(tensors.begin(), tensors.end(),
                     [](const TensorCheck& t) { return t.failures == 0; });
}

std::size_t GradientCheckReport::checked() const {
  std::size_t n = 0;
  for (const auto& t : tensors) n += t.checked;
  return n;
}

GradientCheckReport check_gradients(const GatModel<double>& model, const GraphContext& ctx,
                                    const Matrix<double>& x, std::span<const int> targets,
                                    const GradientCheckOptions& options) {
  auto eval_loss = [&](const GatModel<double>& m) {
    if (options.dropout_seed) {
      Rng rng = Rng::derive(*options.dropout_seed, 4);
      return loss_only<double>(m, ctx, x, targets, &rng);
    }
    return loss_only<double>(m, ctx, x, targets);
  };

  LossAndGrads<double> analytic;
  if (options.dropout_seed) {
    Rng rng = Rng::derive(*options.dropout_seed, 4);
    analytic = loss_and_grads<double>(model, ctx, x, targets, &rng);
  } else {
    analytic = loss_and_grads<double>(model, ctx, x, targets);
  }

  GatModel<double> probe = model;
  auto probe_params = probe.parameters();
  const auto grad_params = analytic.grads.parameters();
  Rng sampler = Rng::derive(options.sample_seed, 5);

  GradientCheckReport report;
  for (std::size_t t = 0; t < probe_params.size(); ++t) {
    TensorCheck check;
    check.name = std::string(parameter_names()[t]);
    Matrix<double>& param = *probe_params[t];
    const auto size = static_cast<std::size_t>(param.size());
    std::vector<std::size_t> entries(size);
    std::iota(entries.begin(), entries.end(), std::size_t{0});
    if (options.max_per_tensor != 0 && options.max_per_tensor < size) {
      sampler.shuffle(entries.begin(), entries.end());
      entries.resize(options.max_per_tensor);
    }
    for (const auto k : entries) {
      double& value = param.data()[k];
      const double saved = value;
      value = saved + options.step;
      const double plus = eval_loss(probe);
      value = saved - options.step;
      const double minus = eval_loss(probe);
      value = saved;
      const double numeric = (plus - minus) / (2.0 * options.step);
      const double exact = grad_params[t]->data()[k];
      const double diff = std::abs(exact - numeric);
      const double scale = std::max(std::abs(exact), std::abs(numeric));
      const double rel = scale > 0.0 ? diff / scale : 0.0;
      ++check.checked;
      check.max_relative_error = std::max(check.max_relative_error, rel);
      if (diff > options.absolute_floor && rel > options.tolerance) ++check.failures;
    }
    report.tensors.push_back(std::move(check));
  }
  return report;
}

}  // namespace papergraph::gat
