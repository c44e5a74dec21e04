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

#include "run.hpp"

#include <openssl/evp.h>

#include <Eigen/Core>
#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "papergraph/error.hpp"

#ifndef PAPERGRAPH_VERSION
#define PAPERGRAPH_VERSION "unknown"
#endif

namespace papergraph::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view bytes) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw InvariantViolation("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string file_digest(const fs::path& path) { return sha256_hex(read_bytes(path)); }

Run::Run(fs::path out_dir) : out_dir_(std::move(out_dir)) {
  std::error_code ec;
  fs::create_directories(out_dir_, ec);
  if (ec) throw Error(ErrorKind::kIoFailure, "cannot create " + out_dir_.string());
}

void Run::write(const std::string& relative, std::string_view bytes) {
  const fs::path target = out_dir_ / relative;
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) throw Error(ErrorKind::kIoFailure, "cannot create " + target.parent_path().string());
  {
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIoFailure, "cannot write " + target.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorKind::kIoFailure, "short write " + target.string());
  }
  auto digest = sha256_hex(bytes);
  std::lock_guard lock(mutex_);
  outputs_[relative] = std::move(digest);
}

void Run::add_input(const fs::path& path) {
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".json" || ext == ".emb")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) inputs_[f.generic_string()] = file_digest(f);
    return;
  }
  inputs_[path.generic_string()] = file_digest(path);
}

void Run::finish(const std::string& command, const std::vector<std::string>& argv) {
  nlohmann::json m;
  m["command"] = command;
  m["argv"] = argv;
  m["config"] = config_;
  m["inputs"] = inputs_;
  m["outputs"] = outputs_;
  m["versions"] = {
      {"papergraph", PAPERGRAPH_VERSION},
      {"compiler", __VERSION__},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                    "." + std::to_string(EIGEN_MINOR_VERSION)},
      {"formats", {{"embeddings", "EMB1"}, {"checkpoint", "GAT1"}}},
  };
  const std::string text = m.dump(2) + "\n";
  std::ofstream out(out_dir_ / kManifestName, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot write manifest");
  out << text;
}

}  // namespace papergraph::cli
