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

#include "papergraph/gat/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <vector>

#include "papergraph/error.hpp"

namespace papergraph::gat {
namespace {

constexpr std::string_view kMagic = "GAT1";

void put_uint(std::string& out, std::uint64_t v, int width) {
  for (int i = 0; i < width; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_name(std::string& out, std::string_view name) {
  put_uint(out, name.size(), 4);
  out += name;
}

class Cursor {
 public:
  explicit Cursor(std::string_view bytes) : bytes_(bytes) {}

  std::uint64_t uint(int width) {
    need(static_cast<std::size_t>(width));
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(width);
    return v;
  }

  std::string name() {
    const auto len = uint(4);
    need(len);
    std::string s(bytes_.substr(pos_, len));
    pos_ += len;
    return s;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(ErrorKind::kShapeMismatch, "checkpoint truncated");
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

struct TensorEntry {
  std::string name;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
};

}  // namespace

std::string encode_checkpoint(const GatModel<float>& model) {
  std::string out(kMagic);
  const std::vector<std::pair<std::string_view, double>> hyper = {
      {"gat_dropout", model.shape.gat_dropout},
      {"mlp_dropout", model.shape.mlp_dropout},
      {"negative_slope", model.shape.negative_slope},
      {"norm_eps", model.shape.norm_eps}};
  put_uint(out, hyper.size(), 4);
  for (const auto& [name, value] : hyper) {
    put_name(out, name);
    put_uint(out, std::bit_cast<std::uint64_t>(value), 8);
  }
  const auto params = model.parameters();
  const auto& names = parameter_names();
  put_uint(out, params.size(), 4);
  for (std::size_t i = 0; i < params.size(); ++i) {
    put_name(out, names[i]);
    put_uint(out, static_cast<std::uint64_t>(params[i]->rows()), 4);
    put_uint(out, static_cast<std::uint64_t>(params[i]->cols()), 4);
  }
  for (const auto* p : params) {
    for (Eigen::Index k = 0; k < p->size(); ++k) {
      put_uint(out, std::bit_cast<std::uint32_t>(p->data()[k]), 4);
    }
  }
  return out;
}

GatModel<float> decode_checkpoint(std::string_view bytes) {
  if (bytes.substr(0, 4) != kMagic) throw Error(ErrorKind::kBadMagic, "not a GAT1 checkpoint");
  Cursor c(bytes.substr(4));

  ModelShape shape;
  const auto n_hyper = c.uint(4);
  for (std::uint64_t i = 0; i < n_hyper; ++i) {
    const auto name = c.name();
    const double value = std::bit_cast<double>(c.uint(8));
    if (name == "gat_dropout") shape.gat_dropout = value;
    else if (name == "mlp_dropout") shape.mlp_dropout = value;
    else if (name == "negative_slope") shape.negative_slope = value;
    else if (name == "norm_eps") shape.norm_eps = value;
  }

  const auto& names = parameter_names();
  const auto n_tensors = c.uint(4);
  if (n_tensors != names.size()) {
    throw Error(ErrorKind::kShapeMismatch, "checkpoint holds " + std::to_string(n_tensors) +
                                               " tensors, expected " +
                                               std::to_string(names.size()));
  }
  std::vector<TensorEntry> table(n_tensors);
  for (std::size_t i = 0; i < n_tensors; ++i) {
    table[i].name = c.name();
    table[i].rows = static_cast<std::uint32_t>(c.uint(4));
    table[i].cols = static_cast<std::uint32_t>(c.uint(4));
    if (table[i].name != names[i]) {
      throw Error(ErrorKind::kShapeMismatch, "tensor " + std::to_string(i) + " is " +
                                                 table[i].name + ", expected " +
                                                 std::string(names[i]));
    }
  }

  std::uint64_t values = 0;
  for (const auto& t : table) values += std::uint64_t{t.rows} * t.cols;
  if (values * 4 != c.remaining()) {
    throw Error(ErrorKind::kShapeMismatch, "parameter payload does not match shape table");
  }

  // Indices follow parameter_names().
  shape.input_dim = table[0].cols;
  shape.layer1_heads = table[1].rows;
  shape.layer1_width = table[1].cols / 2;
  shape.layer2_heads = table[6].rows;
  shape.layer2_width = table[6].cols / 2;
  shape.layer3_heads = table[11].rows;
  shape.layer3_width = table[11].cols / 2;
  shape.mlp_hidden = table[13].rows;
  shape.mlp_projection = table[15].rows;
  shape.classes = table[19].rows;

  GatModel<float> model = make_model<float>(shape);
  auto params = model.parameters();
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (params[i]->rows() != table[i].rows || params[i]->cols() != table[i].cols) {
      throw Error(ErrorKind::kShapeMismatch, table[i].name + " has inconsistent shape");
    }
  }
  for (auto* p : params) {
    for (Eigen::Index k = 0; k < p->size(); ++k) {
      p->data()[k] = std::bit_cast<float>(static_cast<std::uint32_t>(c.uint(4)));
    }
  }
  if (c.remaining() != 0) throw Error(ErrorKind::kShapeMismatch, "trailing bytes in checkpoint");
  return model;
}

void write_checkpoint(const GatModel<float>& model, const std::filesystem::path& path) {
  const auto bytes = encode_checkpoint(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed: " + path.string());
}

GatModel<float> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return decode_checkpoint(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

void write_metadata(const std::filesystem::path& path,
                    const std::map<std::string, std::string>& entries) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
}

std::map<std::string, std::string> read_metadata(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace papergraph::gat
