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

#include <sstream>

#include "fixtures.hpp"
#include "label_oracle.hpp"
#include "thrown.hpp"
#include "papergraph/labels.hpp"
#include "papergraph/random.hpp"

namespace papergraph {
namespace {

using testing::thrown_kind;

FeedbackDocument feedback_with(std::vector<std::size_t> section_sizes) {
  FeedbackDocument fb;
  fb.doc_id = "d";
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t i = 0; i < section_sizes[s]; ++i) {
      fb.sections[s].push_back("S" + std::to_string(s) + "x" + std::to_string(i) + ".");
    }
  }
  return fb;
}

TEST(Queries, WindowsOfK) {
  const auto fb = feedback_with({7, 0, 3, 1});
  const auto q = make_queries(fb, 3);
  // 7 -> 3 windows, 3 -> 1, 1 -> 1
  ASSERT_EQ(q.size(), 5u);
  EXPECT_EQ(q[0].text, "S0x0. S0x1. S0x2.");
  EXPECT_EQ(q[2].length, 1u);
  EXPECT_EQ(q[2].key(), "d/summary/q2");
  EXPECT_EQ(q[3].section, FeedbackSection::kWeaknesses);
  EXPECT_EQ(q[3].window_index, 0u);
  EXPECT_EQ(q[4].key(), "d/questions/q0");
}

TEST(Queries, WindowLengthsMatchOracle) {
  for (std::size_t n = 0; n < 12; ++n) {
    for (const std::size_t k : {1u, 3u, 5u}) {
      const auto q = make_queries(feedback_with({n, 0, 0, 1}), k);
      const auto expected = testing::window_bounds(n, k);
      ASSERT_EQ(q.size(), expected.size() + 1);
      for (std::size_t w = 0; w < expected.size(); ++w) {
        EXPECT_EQ(q[w].length, expected[w].second - expected[w].first);
      }
    }
  }
}

TEST(Queries, OverlappingStrideOne) {
  const auto q = make_queries(feedback_with({4, 0, 0, 0}), 3, {.overlapping = true});
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[1].text, "S0x1. S0x2. S0x3.");
  const auto short_section = make_queries(feedback_with({2, 0, 0, 0}), 3, {.overlapping = true});
  ASSERT_EQ(short_section.size(), 1u);
  EXPECT_EQ(short_section[0].length, 2u);
}

TEST(Queries, ZeroKRejected) {
  EXPECT_EQ(thrown_kind([] { make_queries(feedback_with({1, 0, 0, 0}), 0); }), ErrorKind::kInvalidConfig);
}

TEST(Similarity, InnerProductAndCosine) {
  const std::vector<float> a = {1, 2, 3};
  const std::vector<float> b = {4, -5, 6};
  EXPECT_DOUBLE_EQ(similarity(a, b, Similarity::kInnerProduct), 12.0);
  EXPECT_NEAR(similarity(a, a, Similarity::kCosine), 1.0, 1e-12);
  const std::vector<float> zero = {0, 0, 0};
  EXPECT_EQ(similarity(a, zero, Similarity::kCosine), 0.0);
  const std::vector<float> short_vec = {1};
  EXPECT_EQ(thrown_kind([&] { similarity(a, short_vec, Similarity::kInnerProduct); }),
            ErrorKind::kDimMismatch);
}

TEST(RetrieveTopM, OrdersByScoreThenId) {
  const std::vector<float> q = {1, 0};
  const std::vector<std::vector<float>> v = {{0.5f, 0}, {0.9f, 1}, {0.5f, 7}, {0.1f, 0}};
  std::vector<PassageVector> passages;
  for (std::size_t i = 0; i < v.size(); ++i) passages.push_back({i, v[i]});
  EXPECT_EQ(retrieve_top_m(q, passages, 3), (std::vector<std::size_t>{1, 0, 2}));
  EXPECT_EQ(retrieve_top_m(q, passages, 10).size(), 4u);
  EXPECT_TRUE(retrieve_top_m(q, passages, 0).empty());
}

struct Instance {
  FeedbackDocument feedback;
  std::size_t passages = 0;
  std::size_t k = 1;
  EmbeddingTable queries{EmbeddingRole::kDprQuery, 4};
  EmbeddingTable contexts{EmbeddingRole::kDprContext, 4};
  std::vector<std::vector<float>> query_vectors;
  std::vector<std::vector<float>> passage_vectors;
};

// Small integer-valued vectors so that ties are frequent.
Instance random_instance(Rng& rng) {
  Instance in;
  in.k = std::array<std::size_t, 3>{1, 3, 5}[rng.below(3)];
  in.passages = 1 + rng.below(15);
  std::vector<std::size_t> sizes(4);
  for (auto& s : sizes) s = rng.below(7);
  sizes[rng.below(4)] += 1;
  in.feedback = feedback_with(sizes);
  auto draw = [&] {
    std::vector<float> v(4);
    for (auto& x : v) x = static_cast<float>(static_cast<int>(rng.below(5)) - 2);
    return v;
  };
  for (std::size_t p = 0; p < in.passages; ++p) {
    in.passage_vectors.push_back(draw());
    in.contexts.insert(context_key("d", p), in.passage_vectors.back());
  }
  for (const auto& q : make_queries(in.feedback, in.k)) {
    in.query_vectors.push_back(draw());
    in.queries.insert(q.key(), in.query_vectors.back());
  }
  return in;
}

TEST(GenerateLabels, MatchesBruteForceOracle) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto in = random_instance(rng);
    for (const std::size_t m : {1u, 3u, 5u}) {
      const auto labels = generate_labels(in.feedback, in.passages, in.k, m, in.queries, in.contexts);
      EXPECT_EQ(labels.passages, testing::brute_force_labels(in.query_vectors, in.passage_vectors, m));
      EXPECT_EQ(labels.k, in.k);
      EXPECT_EQ(labels.m, m);
    }
  }
}

TEST(GenerateLabels, MonotoneInM) {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const auto in = random_instance(rng);
    const auto small = generate_labels(in.feedback, in.passages, in.k, 3, in.queries, in.contexts);
    const auto large = generate_labels(in.feedback, in.passages, in.k, 5, in.queries, in.contexts);
    EXPECT_TRUE(std::includes(large.passages.begin(), large.passages.end(), small.passages.begin(),
                              small.passages.end()));
  }
}

TEST(GenerateLabels, InvariantToQueryOrder) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    auto in = random_instance(rng);
    auto shuffled = in.query_vectors;
    rng.shuffle(shuffled.begin(), shuffled.end());
    EXPECT_EQ(testing::brute_force_labels(shuffled, in.passage_vectors, 3),
              generate_labels(in.feedback, in.passages, in.k, 3, in.queries, in.contexts).passages);
  }
}

TEST(GenerateLabels, MissingEmbeddingsListed) {
  Rng rng(44);
  auto in = random_instance(rng);
  EmbeddingTable empty_queries(EmbeddingRole::kDprQuery, 4);
  try {
    generate_labels(in.feedback, in.passages + 1, in.k, 3, empty_queries, in.contexts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMissingEmbedding);
    EXPECT_NE(e.message().find(context_key("d", in.passages)), std::string::npos);
    EXPECT_NE(e.message().find("/q0"), std::string::npos);
  }
  const auto missing = missing_label_embeddings(in.feedback, in.passages + 1, in.k, in.queries,
                                                in.contexts);
  EXPECT_EQ(missing, std::vector<std::string>{context_key("d", in.passages)});
}

TEST(LabelFile, RoundTrip) {
  const std::vector<LabelSet> labels = {{"a", {0, 3, 9}, 3, 5}, {"b", {}, 1, 3}};
  std::stringstream io;
  write_label_file(io, labels);
  EXPECT_EQ(io.str(), "a\t3\t5\t0,3,9\nb\t1\t3\t\n");
  EXPECT_EQ(read_label_file(io), labels);
}

TEST(LabelFile, RejectsMalformedLines) {
  for (const char* bad : {"a\t3\t5\n", "a\tx\t5\t1\n", "a\t3\t5\t1,,2\n", "\t3\t5\t1\n", "a\t-1\t5\t1\n"}) {
    std::stringstream io(bad);
    EXPECT_EQ(thrown_kind([&] { read_label_file(io); }), ErrorKind::kInvalidDocument) << bad;
  }
}

TEST(FeedbackJson, ParsesAndValidates) {
  const auto fb = parse_feedback_json(R"({"doc_id":"p","summary":["A."],"questions":["Q?"]})");
  EXPECT_EQ(fb.section(FeedbackSection::kQuestions).front(), "Q?");
  EXPECT_TRUE(fb.section(FeedbackSection::kStrengths).empty());
  EXPECT_EQ(thrown_kind([] { parse_feedback_json(R"({"doc_id":"p"})"); }), ErrorKind::kInvalidDocument);
  EXPECT_EQ(thrown_kind([] { parse_feedback_json(R"({"summary":["A."]})"); }), ErrorKind::kInvalidDocument);
}

}  // namespace
}  // namespace papergraph
