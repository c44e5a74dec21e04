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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "label_oracle.hpp"
#include "papergraph/document.hpp"
#include "papergraph/embedding_store.hpp"
#include "papergraph/labels.hpp"

#ifndef PAPERGRAPH_CLI_PATH
#error "PAPERGRAPH_CLI_PATH must be defined"
#endif

namespace papergraph {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

class Cli : public ::testing::Test {
 protected:
  static fs::path root() { return fs::temp_directory_path() / "papergraph_cli_test"; }

  static void SetUpTestSuite() {
    fs::remove_all(root());
    fs::create_directories(root());
    ASSERT_EQ(tool("synth --documents 5 --dim 16 --seed 3 --k 5 --out " + q(root() / "fx")), 0) << output();
  }
  static void TearDownTestSuite() { fs::remove_all(root()); }

  static std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }
  static fs::path fx(const char* name) { return root() / "fx" / name; }
  static std::string output() { return slurp(root() / "log.txt"); }

  static int tool(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" + std::string(PAPERGRAPH_CLI_PATH) + "\" " + args + " > " +
                            q(root() / "log.txt") + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  static std::string labels_args(const fs::path& out, int k = 5, int m = 3) {
    return "gen-labels --k " + std::to_string(k) + " --m " + std::to_string(m) + " --docs " + q(fx("docs")) +
           " --feedback " + q(fx("feedback")) + " --embeddings " + q(fx("queries.emb")) + " --embeddings " +
           q(fx("contexts.emb")) + " --out " + q(out);
  }
};

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(tool("frobnicate"), 2);
  EXPECT_EQ(tool("build-graph --out " + q(root() / "x")), 2);
  EXPECT_EQ(tool("--help"), 0);
}

TEST_F(Cli, BuildGraphWritesDumpsAndStats) {
  const auto out = root() / "graph";
  ASSERT_EQ(tool("build-graph --workers 3 --docs " + q(fx("docs")) + " --out " + q(out)), 0) << output();
  EXPECT_TRUE(fs::exists(out / "graphs" / "synth-000.graph"));
  EXPECT_TRUE(fs::exists(out / "units" / "synth-004.sentences.tsv"));
  EXPECT_EQ(slurp(out / "graphs" / "synth-000.graph").rfind("graph synth-000 ", 0), 0u);
  const auto stats = slurp(out / "stats.tsv");
  EXPECT_EQ(std::count(stats.begin(), stats.end(), '\n'), 6);
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

TEST_F(Cli, StatsOnlyWritesOnlyTheTable) {
  const auto out = root() / "stats_only";
  ASSERT_EQ(tool("build-graph --stats-only --docs " + q(fx("docs")) + " --out " + q(out)), 0) << output();
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(out)) names.insert(e.path().filename().string());
  EXPECT_EQ(names, (std::set<std::string>{"stats.tsv", "manifest.json"}));
}

TEST_F(Cli, MalformedDocumentNamesFile) {
  const auto docs = root() / "bad_docs";
  fs::create_directories(docs);
  fs::copy_file(fx("docs") / "synth-000.json", docs / "synth-000.json", fs::copy_options::overwrite_existing);
  spit(docs / "broken.json", "{\"doc_id\": \"b\", \"sections\": [");
  EXPECT_EQ(tool("build-graph --docs " + q(docs) + " --out " + q(root() / "bad_out")), 2);
  EXPECT_NE(output().find("broken.json"), std::string::npos) << output();
}

TEST_F(Cli, GenLabelsMatchesBruteForce) {
  const auto out = root() / "labels";
  ASSERT_EQ(tool(labels_args(out)), 0) << output();
  const auto labels = read_label_file(out / "labels.tsv");
  const auto queries = read_table(fx("queries.emb"));
  const auto contexts = read_table(fx("contexts.emb"));
  const auto docs = load_document_dir(fx("docs"));
  ASSERT_EQ(labels.size(), docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    const auto seg = segment_document(docs[d]);
    const auto fb = load_feedback(fx("feedback") / (seg.doc_id + ".json"));
    std::vector<std::vector<float>> qv;
    std::vector<std::vector<float>> pv;
    for (std::size_t s = 0; s < fb.sections.size(); ++s) {
      const auto windows = testing::window_bounds(fb.sections[s].size(), 5);
      for (std::size_t w = 0; w < windows.size(); ++w) {
        const auto v = *queries.find(query_key(seg.doc_id, kFeedbackSectionNames[s], w));
        qv.emplace_back(v.begin(), v.end());
      }
    }
    for (const auto& p : seg.passages) {
      const auto v = *contexts.find(context_key(seg.doc_id, p.id));
      pv.emplace_back(v.begin(), v.end());
    }
    EXPECT_EQ(labels[d].doc_id, seg.doc_id);
    EXPECT_EQ(labels[d].passages, testing::brute_force_labels(qv, pv, 3)) << seg.doc_id;
  }
}

TEST_F(Cli, GenLabelsRerunIsByteIdentical) {
  ASSERT_EQ(tool(labels_args(root() / "rerun_a")), 0) << output();
  ASSERT_EQ(tool(labels_args(root() / "rerun_b")), 0) << output();
  EXPECT_EQ(slurp(root() / "rerun_a" / "labels.tsv"), slurp(root() / "rerun_b" / "labels.tsv"));
  EXPECT_EQ(slurp(root() / "rerun_a" / "queries.tsv"), slurp(root() / "rerun_b" / "queries.tsv"));
}

TEST_F(Cli, MissingQueryEmbeddingsExitThree) {
  const std::string args = "gen-labels --k 5 --m 3 --docs " + q(fx("docs")) + " --feedback " + q(fx("feedback")) +
                           " --embeddings " + q(fx("contexts.emb")) + " --out " + q(root() / "missing");
  EXPECT_EQ(tool(args), 3);
  EXPECT_NE(output().find("synth-000/summary/q0"), std::string::npos) << output();
}

TEST_F(Cli, GridEnforcedUnlessCustom) {
  EXPECT_EQ(tool(labels_args(root() / "grid", 2, 3)), 2);
  EXPECT_EQ(tool(labels_args(root() / "grid", 5, 4)), 2);
  EXPECT_EQ(tool(labels_args(root() / "grid", 5, 4) + " --allow-custom"), 0) << output();
}

TEST_F(Cli, TrainEmptyCorpusExitTwo) {
  const auto empty = root() / "empty_docs";
  fs::create_directories(empty);
  spit(root() / "empty_labels.tsv", "");
  EXPECT_EQ(tool("train --docs " + q(empty) + " --labels " + q(root() / "empty_labels.tsv") +
                 " --embeddings " + q(fx("sentences.emb")) + " --out " + q(root() / "t_empty")),
            2);
}

TEST_F(Cli, TrainMissingSentenceTableExitThree) {
  EXPECT_EQ(tool("train --docs " + q(fx("docs")) + " --labels " + q(fx("planted.tsv")) + " --out " +
                 q(root() / "t_none")),
            3);
}

TEST_F(Cli, TrainHistoryRowsAndSeedFromEnvironment) {
  const std::string args = "train --epochs 4 --docs " + q(fx("docs")) + " --labels " + q(fx("planted.tsv")) +
                           " --embeddings " + q(fx("sentences.emb")) + " --out ";
  ASSERT_EQ(tool(args + q(root() / "t_env"), "PAPERGRAPH_SEED=9"), 0) << output();
  ASSERT_EQ(tool(args + q(root() / "t_flag") + " --seed 9"), 0) << output();
  ASSERT_EQ(tool(args + q(root() / "t_other") + " --seed 10"), 0) << output();
  const auto history = slurp(root() / "t_env" / "history.tsv");
  EXPECT_EQ(std::count(history.begin(), history.end(), '\n'), 1 + 4);
  EXPECT_EQ(slurp(root() / "t_env" / "model.gat"), slurp(root() / "t_flag" / "model.gat"));
  EXPECT_NE(slurp(root() / "t_env" / "model.gat"), slurp(root() / "t_other" / "model.gat"));
  EXPECT_EQ(tool(args + q(root() / "t_bad"), "PAPERGRAPH_SEED=abc"), 2);
}

TEST_F(Cli, SelectWithoutFeedbackAndScore) {
  const auto train = root() / "t_sel";
  ASSERT_EQ(tool("train --epochs 2 --seed 1 --docs " + q(fx("docs")) + " --labels " + q(fx("planted.tsv")) +
                 " --embeddings " + q(fx("sentences.emb")) + " --out " + q(train)),
            0)
      << output();
  const auto out = root() / "sel";
  ASSERT_EQ(tool("select --docs " + q(fx("docs")) + " --embeddings " + q(fx("sentences.emb")) +
                 " --checkpoint " + q(train / "model.gat") + " --labels " + q(fx("planted.tsv")) +
                 " --score --out " + q(out)),
            0)
      << output();
  EXPECT_TRUE(fs::exists(out / "selections.tsv"));
  EXPECT_TRUE(fs::exists(out / "reduction.tsv"));
  const auto scores = slurp(out / "scores.tsv");
  EXPECT_NE(scores.find("MICRO"), std::string::npos);
  for (const auto& e : fs::directory_iterator(out / "prompts")) {
    const auto text = slurp(e.path());
    EXPECT_TRUE(text.ends_with("### Feedback for the paper:\n")) << e.path();
  }
  EXPECT_EQ(tool("select --docs " + q(fx("docs")) + " --embeddings " + q(fx("sentences.emb")) +
                 " --checkpoint " + q(fx("planted.tsv")) + " --out " + q(root() / "sel_bad")),
            2);
}

TEST_F(Cli, ReplayDetectsChangedInputsAndOutputs) {
  const auto out = root() / "replay_src";
  ASSERT_EQ(tool(labels_args(out)), 0) << output();
  EXPECT_EQ(tool("replay " + q(out / "manifest.json") + " --out " + q(root() / "replay_ok")), 0) << output();

  auto manifest = slurp(out / "manifest.json");
  const auto digest_at = manifest.find("\"labels.tsv\": \"") + 15;
  manifest[digest_at] = manifest[digest_at] == '0' ? '1' : '0';
  spit(root() / "tampered" / "manifest.json", manifest);
  EXPECT_EQ(tool("replay " + q(root() / "tampered" / "manifest.json") + " --out " + q(root() / "replay_bad")), 4);

  const auto copy = root() / "fx_copy";
  fs::copy(root() / "fx", copy, fs::copy_options::recursive);
  const std::string args = "build-graph --docs " + q(copy / "docs") + " --out " + q(root() / "g_copy");
  ASSERT_EQ(tool(args), 0) << output();
  spit(copy / "docs" / "synth-001.json", slurp(copy / "docs" / "synth-000.json"));
  EXPECT_EQ(tool("replay " + q(root() / "g_copy" / "manifest.json") + " --out " + q(root() / "g_replay")), 2);
}

}  // namespace
}  // namespace papergraph
