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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "papergraph/gat/model.hpp"

namespace papergraph::gat {

// GAT1 checkpoint, integers little-endian:
//   "GAT1"
//   u32 n_hyper,   n_hyper x (u32 name_len | name | f64 value)
//   u32 n_tensors, n_tensors x (u32 name_len | name | u32 rows | u32 cols)
//   every tensor's values as f32, row-major, in parameter_names() order.
// Layer widths and head counts are recovered from the tensor shapes; the
// hyper block carries dropout rates, LeakyReLU slope and LayerNorm epsilon.
std::string encode_checkpoint(const GatModel<float>& model);
GatModel<float> decode_checkpoint(std::string_view bytes);

void write_checkpoint(const GatModel<float>& model, const std::filesystem::path& path);
GatModel<float> read_checkpoint(const std::filesystem::path& path);

// Sidecar "key=value" text file, keys sorted.
void write_metadata(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& entries);
std::map<std::string, std::string> read_metadata(const std::filesystem::path& path);

}  // namespace papergraph::gat
