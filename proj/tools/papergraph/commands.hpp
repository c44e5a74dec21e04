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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "run.hpp"

namespace papergraph::cli {

struct Options {
  std::filesystem::path docs;
  std::filesystem::path feedback;
  std::filesystem::path out;
  std::filesystem::path checkpoint;
  std::filesystem::path labels;
  std::filesystem::path selections;
  std::vector<std::filesystem::path> embeddings;
  std::size_t k = 3;
  std::size_t m = 3;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool allow_custom = false;
  bool stats_only = false;
  bool chain_sections = false;
  bool fd_check = false;
  bool score = false;
  std::size_t epochs = 30;
  double learning_rate = 1e-3;
  std::size_t documents = 50;
  std::uint32_t dim = 768;
};

void cmd_synth(const Options& opt, Run& run);
void cmd_build_graph(const Options& opt, Run& run);
void cmd_gen_labels(const Options& opt, Run& run);
void cmd_train(const Options& opt, Run& run);
void cmd_select(const Options& opt, Run& run);
void cmd_prompt(const Options& opt, Run& run);
void cmd_stats(const Options& opt, Run& run);
void cmd_score(const Options& opt, Run& run);

}  // namespace papergraph::cli
