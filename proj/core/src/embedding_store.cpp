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

#include "papergraph/embedding_store.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "papergraph/error.hpp"

namespace papergraph {
namespace {

constexpr std::string_view kMagic = "EMB1";
constexpr std::size_t kHeaderSize = 4 + 1 + 4 + 8;

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::uint64_t uint(int width) {
    if (remaining() < static_cast<std::size_t>(width)) {
      throw Error(ErrorKind::kDimMismatch, "file truncated");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    }
    pos_ += width;
    return v;
  }

  std::string_view take(std::size_t n) {
    if (remaining() < n) throw Error(ErrorKind::kDimMismatch, "file truncated");
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

const char* to_string(EmbeddingRole role) {
  switch (role) {
    case EmbeddingRole::kSentence: return "sentence";
    case EmbeddingRole::kDprQuery: return "dpr_query";
    case EmbeddingRole::kDprContext: return "dpr_context";
  }
  return "?";
}

EmbeddingTable::EmbeddingTable(EmbeddingRole role, std::uint32_t dim)
    : role_(role), dim_(dim) {
  if (dim == 0) throw Error(ErrorKind::kDimMismatch, "dim must be positive");
}

bool EmbeddingTable::contains(std::string_view id) const {
  return entries_.find(id) != entries_.end();
}

void EmbeddingTable::insert(std::string id, std::vector<float> vector) {
  if (vector.size() != dim_) {
    throw Error(ErrorKind::kDimMismatch,
                id + ": " + std::to_string(vector.size()) + " components, table dim " +
                    std::to_string(dim_));
  }
  for (const float v : vector) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kNonFiniteValue, id);
  }
  if (!entries_.emplace(std::move(id), std::move(vector)).second) {
    throw Error(ErrorKind::kDuplicateId, "duplicate embedding id");
  }
}

std::optional<std::span<const float>> EmbeddingTable::find(std::string_view id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return std::span<const float>(it->second);
}

std::string encode_table(const EmbeddingTable& table) {
  std::string out(kMagic);
  out.push_back(static_cast<char>(table.role()));
  put_u32(out, table.dim());
  put_u64(out, table.size());
  for (const auto& [id, vec] : table.entries()) {
    put_u32(out, static_cast<std::uint32_t>(id.size()));
    out += id;
    for (const float v : vec) put_u32(out, std::bit_cast<std::uint32_t>(v));
  }
  return out;
}

EmbeddingTable decode_table(std::string_view bytes) {
  if (bytes.size() < kHeaderSize || bytes.substr(0, 4) != kMagic) {
    throw Error(ErrorKind::kBadMagic, "not an EMB1 file");
  }
  Reader r(bytes.substr(4));
  const auto role = r.uint(1);
  if (role > 2) throw Error(ErrorKind::kBadMagic, "unknown role tag");
  const auto dim = static_cast<std::uint32_t>(r.uint(4));
  const auto count = r.uint(8);
  if (dim == 0) throw Error(ErrorKind::kDimMismatch, "dim must be positive");

  // Every record needs at least the length prefix and the vector payload, so
  // the declared count is bounded by the bytes actually present.
  const std::uint64_t min_record = 4 + std::uint64_t{dim} * 4;
  if (count > r.remaining() / min_record) {
    throw Error(ErrorKind::kDimMismatch,
                "declared count " + std::to_string(count) +
                    " exceeds file size for dim " + std::to_string(dim));
  }

  EmbeddingTable table(static_cast<EmbeddingRole>(role), dim);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto id_len = r.uint(4);
    std::string id(r.take(id_len));
    const auto payload = r.take(std::size_t{dim} * 4);
    std::vector<float> vec(dim);
    for (std::uint32_t k = 0; k < dim; ++k) {
      std::uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) {
        bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(payload[4 * k + b]))
                << (8 * b);
      }
      vec[k] = std::bit_cast<float>(bits);
    }
    try {
      table.insert(std::move(id), std::move(vec));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kDuplicateId) {
        throw Error(ErrorKind::kDuplicateId, "record " + std::to_string(i));
      }
      throw;
    }
  }
  if (r.remaining() != 0) {
    throw Error(ErrorKind::kDimMismatch, "trailing bytes after last record");
  }
  return table;
}

void write_table(const EmbeddingTable& table, const std::filesystem::path& path) {
  const auto bytes = encode_table(table);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::kIoFailure, "write failed: " + path.string());
}

EmbeddingTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIoFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return decode_table(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

std::string sentence_key(std::string_view doc_id, std::size_t sentence_id) {
  return std::string(doc_id) + "/s" + std::to_string(sentence_id);
}

std::string context_key(std::string_view doc_id, std::size_t passage_id) {
  return std::string(doc_id) + "/p" + std::to_string(passage_id);
}

std::string query_key(std::string_view doc_id, std::string_view section,
                      std::size_t window_index) {
  return std::string(doc_id) + "/" + std::string(section) + "/q" +
         std::to_string(window_index);
}

}  // namespace papergraph
