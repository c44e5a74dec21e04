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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "papergraph/gat/model.hpp"
#include "papergraph/gat/network.hpp"

namespace papergraph::gat {

struct GradientCheckOptions {
  double step = 1e-4;
  double tolerance = 1e-4;  // relative
  // Gradients whose analytic and numeric values agree to this absolute level
  // pass regardless of the relative error (both are roundoff-sized).
  double absolute_floor = 1e-9;
  // 0 checks every entry; otherwise a seeded sample of this many per tensor.
  std::size_t max_per_tensor = 0;
  std::uint64_t sample_seed = 0;
  // When set, dropout is active with masks regenerated identically for every
  // evaluation from this seed.
  std::optional<std::uint64_t> dropout_seed;
};

struct TensorCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  double max_relative_error = 0.0;
};

struct GradientCheckReport {
  std::vector<TensorCheck> tensors;

  bool passed() const;
  std::size_t checked() const;
};

// Central differences of loss_only against loss_and_grads, in double.
GradientCheckReport check_gradients(const GatModel<double>& model, const GraphContext& ctx,
                                    const Matrix<double>& x, std::span<const int> targets,
                                    const GradientCheckOptions& options = {});

}  // namespace papergraph::gat
