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
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace papergraph::cli {

// Raised when an internal consistency check fails; maps to exit code 4.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sha256_hex(std::string_view bytes);
std::string read_bytes(const std::filesystem::path& path);
std::string file_digest(const std::filesystem::path& path);

// Collects the outputs of one command and writes its manifest.
class Run {
 public:
  explicit Run(std::filesystem::path out_dir);

  const std::filesystem::path& out_dir() const { return out_dir_; }

  // Thread-safe. `relative` uses forward slashes.
  void write(const std::string& relative, std::string_view bytes);

  // Files are digested directly; directories contribute their *.json and *.emb files.
  void add_input(const std::filesystem::path& path);

  nlohmann::json& config() { return config_; }
  const std::map<std::string, std::string>& outputs() const { return outputs_; }

  void finish(const std::string& command, const std::vector<std::string>& argv);

 private:
  std::filesystem::path out_dir_;
  std::mutex mutex_;
  std::map<std::string, std::string> outputs_;
  std::map<std::string, std::string> inputs_;
  nlohmann::json config_ = nlohmann::json::object();
};

inline constexpr const char* kManifestName = "manifest.json";

}  // namespace papergraph::cli
