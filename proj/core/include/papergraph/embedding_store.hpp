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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace papergraph {

enum class EmbeddingRole : std::uint8_t {
  kSentence = 0,
  kDprQuery = 1,
  kDprContext = 2,
};

const char* to_string(EmbeddingRole role);

// id -> fixed-width float vector, iterated and written in id order.
class EmbeddingTable {
 public:
  EmbeddingTable(EmbeddingRole role, std::uint32_t dim);

  EmbeddingRole role() const { return role_; }
  std::uint32_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(std::string_view id) const;

  // Throws DimMismatch, NonFiniteValue, or DuplicateId.
  void insert(std::string id, std::vector<float> vector);

  // nullopt when the id is absent.
  std::optional<std::span<const float>> find(std::string_view id) const;

  const std::map<std::string, std::vector<float>, std::less<>>& entries() const {
    return entries_;
  }

  friend bool operator==(const EmbeddingTable&, const EmbeddingTable&) = default;

 private:
  EmbeddingRole role_;
  std::uint32_t dim_;
  std::map<std::string, std::vector<float>, std::less<>> entries_;
};

// EMB1 layout, all integers little-endian:
//   "EMB1" | u8 role | u32 dim | u64 count |
//   count x (u32 id_len | id bytes | dim x f32)
void write_table(const EmbeddingTable& table, const std::filesystem::path& path);
EmbeddingTable read_table(const std::filesystem::path& path);

std::string encode_table(const EmbeddingTable& table);
EmbeddingTable decode_table(std::string_view bytes);

// Key scheme shared with the embedding sidecar.
std::string sentence_key(std::string_view doc_id, std::size_t sentence_id);
std::string context_key(std::string_view doc_id, std::size_t passage_id);
std::string query_key(std::string_view doc_id, std::string_view section,
                      std::size_t window_index);

}  // namespace papergraph
