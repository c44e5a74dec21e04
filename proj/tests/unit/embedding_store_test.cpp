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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>

#include "thrown.hpp"
#include "papergraph/embedding_store.hpp"
#include "papergraph/random.hpp"
#include "papergraph/synthetic.hpp"

namespace papergraph {
namespace {

using testing::thrown_kind;

EmbeddingTable sample_table(EmbeddingRole role = EmbeddingRole::kSentence) {
  EmbeddingTable t(role, 3);
  t.insert("doc/s1", {1.0f, -2.5f, 0.125f});
  t.insert("doc/s0", {0.0f, 1e-30f, -0.0f});
  return t;
}

TEST(EmbeddingTable, InsertValidates) {
  EmbeddingTable t(EmbeddingRole::kSentence, 2);
  EXPECT_EQ(thrown_kind([&] { t.insert("a", {1.0f}); }), ErrorKind::kDimMismatch);
  EXPECT_EQ(thrown_kind([&] { t.insert("a", {1.0f, std::nanf("")}); }), ErrorKind::kNonFiniteValue);
  EXPECT_EQ(thrown_kind([&] {
              t.insert("a", {1.0f, std::numeric_limits<float>::infinity()});
            }),
            ErrorKind::kNonFiniteValue);
  t.insert("a", {1.0f, 2.0f});
  EXPECT_EQ(thrown_kind([&] { t.insert("a", {3.0f, 4.0f}); }), ErrorKind::kDuplicateId);
  EXPECT_TRUE(t.contains("a"));
  EXPECT_FALSE(t.find("b").has_value());
  EXPECT_EQ((*t.find("a"))[1], 2.0f);
}

TEST(Emb1, LayoutIsLittleEndianAndSorted) {
  const auto bytes = encode_table(sample_table(EmbeddingRole::kDprContext));
  ASSERT_EQ(bytes.substr(0, 4), "EMB1");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 2u);
  EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 3u);  // dim low byte
  EXPECT_EQ(static_cast<unsigned char>(bytes[9]), 2u);  // count low byte
  // First record is the smaller id.
  EXPECT_EQ(static_cast<unsigned char>(bytes[17]), 6u);
  EXPECT_EQ(bytes.substr(21, 6), "doc/s0");
  EXPECT_EQ(bytes.size(), 17u + 2 * (4 + 6 + 12));
}

TEST(Emb1, RoundTripBitExact) {
  const auto t = sample_table();
  const auto back = decode_table(encode_table(t));
  EXPECT_EQ(back, t);
  // -0.0 and denormals survive bit-for-bit.
  const auto v = *back.find("doc/s0");
  EXPECT_TRUE(std::signbit(v[2]));
  EXPECT_EQ(encode_table(back), encode_table(t));
}

TEST(Emb1, RoundTripRandomTables) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dim = static_cast<std::uint32_t>(1 + rng.below(32));
    EmbeddingTable t(static_cast<EmbeddingRole>(rng.below(3)), dim);
    const auto n = rng.below(20);
    for (std::uint64_t i = 0; i < n; ++i) {
      t.insert("d" + std::to_string(trial) + "/s" + std::to_string(i),
               fake_unit_vector(std::to_string(i), dim, 5));
    }
    EXPECT_EQ(decode_table(encode_table(t)), t);
  }
}

TEST(Emb1, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "pg_emb_test.emb";
  const auto t = sample_table(EmbeddingRole::kDprQuery);
  write_table(t, path);
  EXPECT_EQ(read_table(path), t);
  std::filesystem::remove(path);
  EXPECT_EQ(thrown_kind([&] { read_table(path); }), ErrorKind::kIoFailure);
}

TEST(Emb1, RejectsBadMagicAndRole) {
  auto bytes = encode_table(sample_table());
  auto bad = bytes;
  bad[3] = '2';
  EXPECT_EQ(thrown_kind([&] { decode_table(bad); }), ErrorKind::kBadMagic);
  bad = bytes;
  bad[4] = 7;
  EXPECT_EQ(thrown_kind([&] { decode_table(bad); }), ErrorKind::kBadMagic);
  EXPECT_EQ(thrown_kind([&] { decode_table("EM"); }), ErrorKind::kBadMagic);
}

TEST(Emb1, RejectsTruncationAndTrailingBytes) {
  const auto bytes = encode_table(sample_table());
  for (std::size_t cut = 5; cut < bytes.size(); ++cut) {
    const auto kind = thrown_kind([&] { decode_table(bytes.substr(0, cut)); });
    // Shorter than the fixed header is not recognisable as EMB1 at all.
    EXPECT_EQ(kind, cut < 17 ? ErrorKind::kBadMagic : ErrorKind::kDimMismatch) << "cut at " << cut;
  }
  EXPECT_EQ(thrown_kind([&] { decode_table(bytes + "x"); }), ErrorKind::kDimMismatch);
}

TEST(Emb1, RejectsHugeDeclaredCountBeforeAllocating) {
  auto bytes = encode_table(sample_table());
  for (int i = 0; i < 8; ++i) bytes[9 + i] = static_cast<char>(0xff);
  EXPECT_EQ(thrown_kind([&] { decode_table(bytes); }), ErrorKind::kDimMismatch);
}

TEST(Emb1, RejectsZeroDimAndPayloadErrors) {
  auto bytes = encode_table(sample_table());
  auto zero = bytes;
  std::memset(zero.data() + 5, 0, 4);
  EXPECT_EQ(thrown_kind([&] { decode_table(zero); }), ErrorKind::kDimMismatch);

  // NaN payload: overwrite the first float of the first record.
  auto nan = bytes;
  const float q = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(nan.data() + 27, &q, 4);
  EXPECT_EQ(thrown_kind([&] { decode_table(nan); }), ErrorKind::kNonFiniteValue);

  // Same id twice.
  auto dup = bytes;
  dup[21 + 22 + 5] = '0';  // second record "doc/s1" -> "doc/s0"
  EXPECT_EQ(thrown_kind([&] { decode_table(dup); }), ErrorKind::kDuplicateId);
}

TEST(Keys, Scheme) {
  EXPECT_EQ(sentence_key("p1", 4), "p1/s4");
  EXPECT_EQ(context_key("p1", 0), "p1/p0");
  EXPECT_EQ(query_key("p1", "weaknesses", 2), "p1/weaknesses/q2");
}

TEST(FakeUnitVector, DeterministicAndNormalized) {
  const auto a = fake_unit_vector("x/s0", 768, 3);
  const auto b = fake_unit_vector("x/s0", 768, 3);
  EXPECT_EQ(a, b);
  double norm = 0.0;
  for (const float v : a) norm += static_cast<double>(v) * v;
  EXPECT_NEAR(norm, 1.0, 1e-5);
  EXPECT_NE(a, fake_unit_vector("x/s1", 768, 3));
}

}  // namespace
}  // namespace papergraph
