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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "papergraph/error.hpp"
#include "run.hpp"

namespace papergraph::cli {
namespace {

namespace fs = std::filesystem;

std::uint64_t default_seed() {
  const char* env = std::getenv("PAPERGRAPH_SEED");
  if (env == nullptr || *env == '\0') return 0;
  std::size_t used = 0;
  try {
    const auto v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::kInvalidConfig, std::string("PAPERGRAPH_SEED is not an integer: ") + env);
}

void check_grid(const Options& opt, bool uses_m) {
  if (opt.allow_custom) {
    if (opt.k == 0 || (uses_m && opt.m == 0)) throw Error(ErrorKind::kInvalidConfig, "k and m must be positive");
    return;
  }
  if (opt.k != 1 && opt.k != 3 && opt.k != 5) {
    throw Error(ErrorKind::kInvalidConfig, "--k must be 1, 3 or 5 (use --allow-custom)");
  }
  if (uses_m && opt.m != 3 && opt.m != 5) {
    throw Error(ErrorKind::kInvalidConfig, "--m must be 3 or 5 (use --allow-custom)");
  }
}

std::vector<std::string> with_out(std::vector<std::string> argv, const std::string& out) {
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (argv[i] == "--out" && i + 1 < argv.size()) {
      argv[i + 1] = out;
      return argv;
    }
    if (argv[i].starts_with("--out=")) {
      argv[i] = "--out=" + out;
      return argv;
    }
  }
  argv.push_back("--out");
  argv.push_back(out);
  return argv;
}

int replay(const fs::path& manifest_path, const fs::path& out) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_bytes(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInvalidDocument, manifest_path.string() + ": " + e.what());
  }
  const auto inputs = manifest.at("inputs").get<std::map<std::string, std::string>>();
  for (const auto& [path, digest] : inputs) {
    if (!fs::exists(path)) throw Error(ErrorKind::kIoFailure, "input no longer exists: " + path);
    if (file_digest(path) != digest) throw Error(ErrorKind::kInvalidDocument, "input changed since the run: " + path);
  }
  auto argv = with_out(manifest.at("argv").get<std::vector<std::string>>(), out.string());
  const bool has_seed = std::any_of(argv.begin(), argv.end(), [](const std::string& a) {
    return a == "--seed" || a.starts_with("--seed=");
  });
  if (!has_seed) {
    argv.push_back("--seed");
    argv.push_back(manifest.at("config").at("seed").dump());
  }
  if (const int code = run_cli(argv); code != kExitOk) return code;

  const auto expected = manifest.at("outputs").get<std::map<std::string, std::string>>();
  const auto replayed = nlohmann::json::parse(read_bytes(out / kManifestName))
                            .at("outputs")
                            .get<std::map<std::string, std::string>>();
  int mismatches = 0;
  for (const auto& [name, digest] : expected) {
    const auto it = replayed.find(name);
    if (it == replayed.end()) {
      std::cerr << "replay: missing output " << name << "\n";
      ++mismatches;
    } else if (it->second != digest) {
      std::cerr << "replay: output differs " << name << "\n";
      ++mismatches;
    }
  }
  for (const auto& [name, digest] : replayed) {
    if (!expected.contains(name)) {
      std::cerr << "replay: unexpected output " << name << "\n";
      ++mismatches;
    }
  }
  if (mismatches != 0) throw InvariantViolation(std::to_string(mismatches) + " outputs not reproduced");
  std::cout << "replay: " << expected.size() << " outputs reproduced byte-exactly\n";
  return kExitOk;
}

int dispatch(const std::vector<std::string>& args) {
  Options opt;
  CLI::App app{"papergraph: document graphs, passage labels and GAT passage selection"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string seed_text;
  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed_text, "Random seed (default $PAPERGRAPH_SEED or 0)"); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", opt.out, "Output directory")->required(); };
  auto add_docs = [&](CLI::App* sub) { sub->add_option("--docs", opt.docs, "Directory of document JSON files")->required(); };
  auto add_workers = [&](CLI::App* sub) {
    sub->add_option("--workers", opt.workers, "Worker threads for per-document stages")->check(CLI::PositiveNumber);
  };
  auto add_embeddings = [&](CLI::App* sub) {
    sub->add_option("--embeddings", opt.embeddings, "EMB1 file (repeatable, role read from header)");
  };
  auto add_km = [&](CLI::App* sub, bool with_m) {
    sub->add_option("--k", opt.k, "Feedback sentences per query window");
    if (with_m) sub->add_option("--m", opt.m, "Passages retrieved per query");
    sub->add_flag("--allow-custom", opt.allow_custom, "Permit k/m outside the evaluated grid");
  };

  auto* synth = app.add_subcommand("synth", "Write a planted-signal fixture corpus with fake embeddings");
  add_out(synth);
  add_seed(synth);
  add_km(synth, false);
  synth->add_option("--documents", opt.documents, "Number of documents")->check(CLI::PositiveNumber);
  synth->add_option("--dim", opt.dim, "Embedding width")->check(CLI::PositiveNumber);

  auto* build = app.add_subcommand("build-graph", "Build graph dumps and statistics");
  add_docs(build);
  add_out(build);
  add_seed(build);
  add_workers(build);
  build->add_flag("--stats-only", opt.stats_only, "Write only the statistics table");
  build->add_flag("--chain-sections", opt.chain_sections, "Chain passages across section boundaries");

  auto* labels = app.add_subcommand("gen-labels", "Generate silver passage labels from feedback");
  add_docs(labels);
  add_out(labels);
  add_seed(labels);
  add_workers(labels);
  add_embeddings(labels);
  add_km(labels, true);
  labels->add_option("--feedback", opt.feedback, "Directory of feedback JSON files")->required();

  auto* train = app.add_subcommand("train", "Train the passage classifier");
  add_docs(train);
  add_out(train);
  add_seed(train);
  add_embeddings(train);
  train->add_option("--labels", opt.labels, "Label file")->required();
  train->add_option("--epochs", opt.epochs, "Training epochs");
  train->add_option("--lr", opt.learning_rate, "Adam learning rate")->check(CLI::PositiveNumber);
  train->add_flag("--fd-check", opt.fd_check, "Verify gradients in double precision after training");

  auto* select = app.add_subcommand("select", "Select passages with a checkpoint and assemble prompts");
  add_docs(select);
  add_out(select);
  add_seed(select);
  add_workers(select);
  add_embeddings(select);
  select->add_option("--checkpoint", opt.checkpoint, "GAT1 checkpoint")->required();
  select->add_option("--feedback", opt.feedback, "Feedback directory (training-mode prompts)");
  select->add_option("--labels", opt.labels, "Gold labels for --score");
  select->add_flag("--score", opt.score, "Score selections against --labels");

  auto* prompt = app.add_subcommand("prompt", "Assemble prompts from a selection file");
  add_docs(prompt);
  add_out(prompt);
  add_seed(prompt);
  prompt->add_option("--selections", opt.selections, "Selection file")->required();
  prompt->add_option("--feedback", opt.feedback, "Feedback directory (training-mode prompts)");

  auto* stats = app.add_subcommand("stats", "Token and passage reduction report");
  add_docs(stats);
  add_out(stats);
  add_seed(stats);
  stats->add_option("--selections", opt.selections, "Selection file")->required();

  auto* score = app.add_subcommand("score", "Precision, recall and F1 of selections");
  add_out(score);
  add_seed(score);
  score->add_option("--selections", opt.selections, "Selection file")->required();
  score->add_option("--labels", opt.labels, "Gold label file")->required();

  fs::path manifest;
  auto* rerun = app.add_subcommand("replay", "Re-run a manifest and compare output digests");
  rerun->add_option("manifest", manifest, "manifest.json of an earlier run")->required();
  add_out(rerun);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  if (rerun->parsed()) return replay(manifest, opt.out);

  opt.seed = default_seed();
  if (!seed_text.empty()) {
    std::size_t used = 0;
    try {
      opt.seed = std::stoull(seed_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != seed_text.size() || seed_text.front() == '-') {
      throw Error(ErrorKind::kInvalidConfig, "--seed is not a non-negative integer: " + seed_text);
    }
  }

  const std::vector<std::pair<CLI::App*, std::function<void(const Options&, Run&)>>> table = {
      {synth, cmd_synth},   {build, cmd_build_graph}, {labels, cmd_gen_labels}, {train, cmd_train},
      {select, cmd_select}, {prompt, cmd_prompt},     {stats, cmd_stats},       {score, cmd_score},
  };
  for (const auto& [sub, fn] : table) {
    if (!sub->parsed()) continue;
    if (sub == synth) check_grid(opt, false);
    if (sub == labels) check_grid(opt, true);
    Run run(opt.out);
    run.config()["seed"] = opt.seed;
    run.config()["workers"] = opt.workers;
    fn(opt, run);
    run.finish(sub->get_name(), args);
    return kExitOk;
  }
  return kExitInput;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kMissingEmbedding ? kExitMissingDependency : kExitInput;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace papergraph::cli
