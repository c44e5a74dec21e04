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

#include "commands.hpp"

#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "papergraph/document.hpp"
#include "papergraph/embedding_store.hpp"
#include "papergraph/error.hpp"
#include "papergraph/gat/checkpoint.hpp"
#include "papergraph/gat/gradient_check.hpp"
#include "papergraph/gat/network.hpp"
#include "papergraph/gat/train.hpp"
#include "papergraph/graph.hpp"
#include "papergraph/labels.hpp"
#include "papergraph/metrics.hpp"
#include "papergraph/parallel.hpp"
#include "papergraph/prompt.hpp"
#include "papergraph/synthetic.hpp"

namespace papergraph::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string tsv_field(std::string text) {
  for (auto& c : text) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

void require_path(const fs::path& p, const char* flag) {
  if (p.empty()) throw Error(ErrorKind::kInvalidConfig, std::string(flag) + " is required");
}

std::vector<SegmentedDocument> load_corpus(const Options& opt, Run& run) {
  require_path(opt.docs, "--docs");
  const auto docs = load_document_dir(opt.docs);
  run.add_input(opt.docs);
  const auto violations = validate_corpus(docs);
  if (!violations.empty()) {
    std::ostringstream msg;
    for (const auto& v : violations) msg << "\n  " << v.path << ": " << v.message;
    throw Error(ErrorKind::kInvalidDocument, "corpus validation failed" + msg.str());
  }
  std::vector<SegmentedDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(segment_document(d));
  return out;
}

std::map<std::string, const SegmentedDocument*> index_by_id(const std::vector<SegmentedDocument>& docs) {
  std::map<std::string, const SegmentedDocument*> out;
  for (const auto& d : docs) out[d.doc_id] = &d;
  return out;
}

std::map<EmbeddingRole, EmbeddingTable> load_tables(const Options& opt, Run& run) {
  std::map<EmbeddingRole, EmbeddingTable> out;
  for (const auto& path : opt.embeddings) {
    auto table = read_table(path);
    run.add_input(path);
    const auto role = table.role();
    if (!out.emplace(role, std::move(table)).second) {
      throw Error(ErrorKind::kInvalidConfig,
                  std::string("two embedding files with role ") + to_string(role));
    }
  }
  return out;
}

const EmbeddingTable& need_table(const std::map<EmbeddingRole, EmbeddingTable>& tables,
                                 EmbeddingRole role) {
  const auto it = tables.find(role);
  if (it == tables.end()) {
    throw Error(ErrorKind::kMissingEmbedding,
                std::string("no ") + to_string(role) + " table given via --embeddings");
  }
  return it->second;
}

std::map<std::string, FeedbackDocument> load_feedback_map(const Options& opt, Run& run) {
  std::map<std::string, FeedbackDocument> out;
  if (opt.feedback.empty()) return out;
  for (auto& fb : load_feedback_dir(opt.feedback)) {
    const auto id = fb.doc_id;
    if (!out.emplace(id, std::move(fb)).second) {
      throw Error(ErrorKind::kDuplicateId, "feedback for " + id + " given twice");
    }
  }
  run.add_input(opt.feedback);
  return out;
}

std::vector<LabelSet> load_labels(const fs::path& path, Run& run) {
  auto labels = read_label_file(path);
  run.add_input(path);
  return labels;
}

std::string feedback_to_json(const FeedbackDocument& fb) {
  json j;
  j["doc_id"] = fb.doc_id;
  for (std::size_t s = 0; s < kFeedbackSectionNames.size(); ++s) {
    j[std::string(kFeedbackSectionNames[s])] = fb.sections[s];
  }
  return j.dump(2) + "\n";
}

std::string encode_labels(const std::vector<LabelSet>& labels) {
  std::ostringstream out;
  write_label_file(out, labels);
  return out.str();
}

std::string encode_selections(const Selections& s) {
  std::ostringstream out;
  write_selection_file(out, s);
  return out.str();
}

std::string encode_reduction(const std::vector<SegmentedDocument>& docs, const Selections& s) {
  std::ostringstream out;
  write_reduction_report(out, reduction_report(docs, s));
  return out.str();
}

void write_prompts(const std::vector<SegmentedDocument>& docs, const Selections& selections,
                   const std::map<std::string, FeedbackDocument>& feedback, Run& run) {
  for (const auto& d : docs) {
    const auto sel = selections.find(d.doc_id);
    if (sel == selections.end()) continue;
    if (sel->second.empty()) {
      std::cerr << "warning: " << d.doc_id << ": no passages selected, prompt skipped\n";
      continue;
    }
    const auto fb = feedback.find(d.doc_id);
    const auto bundle = make_bundle(d, sel->second, fb == feedback.end() ? nullptr : &fb->second);
    run.write("prompts/" + d.doc_id + ".txt", assemble_prompt(bundle));
  }
}

}  // namespace

void cmd_synth(const Options& opt, Run& run) {
  SyntheticConfig config;
  config.documents = opt.documents;
  config.dim = opt.dim;
  config.seed = opt.seed;
  run.config()["documents"] = opt.documents;
  run.config()["dim"] = opt.dim;
  run.config()["k"] = opt.k;
  const auto corpus = make_planted_corpus(config);

  EmbeddingTable queries(EmbeddingRole::kDprQuery, opt.dim);
  EmbeddingTable contexts(EmbeddingRole::kDprContext, opt.dim);
  for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    run.write("docs/" + doc.doc_id + ".json", document_to_json(doc));
    run.write("feedback/" + doc.doc_id + ".json", feedback_to_json(corpus.feedback[d]));
    const auto seg = segment_document(doc);
    for (const auto& p : seg.passages) {
      contexts.insert(context_key(doc.doc_id, p.id), fake_unit_vector(p.text, opt.dim, opt.seed));
    }
    for (const auto& q : make_queries(corpus.feedback[d], opt.k)) {
      queries.insert(q.key(), fake_unit_vector(q.text, opt.dim, opt.seed));
    }
  }
  run.write("sentences.emb", encode_table(corpus.sentences));
  run.write("queries.emb", encode_table(queries));
  run.write("contexts.emb", encode_table(contexts));
  run.write("planted.tsv", encode_labels(corpus.labels));
}

void cmd_build_graph(const Options& opt, Run& run) {
  run.config()["stats_only"] = opt.stats_only;
  run.config()["chain_sections"] = opt.chain_sections;
  const auto docs = load_corpus(opt, run);
  const GraphOptions graph_options{.chain_across_sections = opt.chain_sections};

  std::vector<GraphStats> stats(docs.size());
  std::vector<std::string> problems(docs.size());
  parallel_for(docs.size(), opt.workers, [&](std::size_t i) {
    const auto& seg = docs[i];
    const auto g = build_graph(seg, graph_options);
    for (const auto& v : check_graph_invariants(g)) problems[i] += "\n  " + seg.doc_id + ": " + v;
    stats[i] = graph_stats(g);
    if (opt.stats_only) return;
    std::ostringstream dump;
    write_graph_dump(dump, g);
    run.write("graphs/" + seg.doc_id + ".graph", dump.str());
    std::ostringstream sentences;
    std::ostringstream passages;
    for (const auto& p : seg.passages) {
      passages << context_key(seg.doc_id, p.id) << '\t' << tsv_field(p.text) << '\n';
      for (const auto& s : p.sentences) {
        sentences << sentence_key(seg.doc_id, s.id) << '\t' << tsv_field(s.text) << '\n';
      }
    }
    run.write("units/" + seg.doc_id + ".sentences.tsv", sentences.str());
    run.write("units/" + seg.doc_id + ".passages.tsv", passages.str());
  });
  std::string all_problems;
  for (const auto& p : problems) all_problems += p;
  if (!all_problems.empty()) throw InvariantViolation("graph invariants violated" + all_problems);

  std::ostringstream table;
  table << "doc_id\tpaper\theading\tsubheading\tpassage\tsentence\thier_edges\tseq_edges\tmax_depth\n";
  for (std::size_t i = 0; i < docs.size(); ++i) {
    table << docs[i].doc_id;
    for (const auto c : stats[i].kind_counts) table << '\t' << c;
    table << '\t' << stats[i].hier_edges << '\t' << stats[i].seq_edges << '\t' << stats[i].max_depth
          << '\n';
  }
  run.write("stats.tsv", table.str());
}

void cmd_gen_labels(const Options& opt, Run& run) {
  run.config()["k"] = opt.k;
  run.config()["m"] = opt.m;
  const auto docs = load_corpus(opt, run);
  const auto by_id = index_by_id(docs);
  require_path(opt.feedback, "--feedback");
  const auto feedback = load_feedback_map(opt, run);
  const auto tables = load_tables(opt, run);

  std::ostringstream query_list;
  for (const auto& [id, fb] : feedback) {
    if (!by_id.contains(id)) throw Error(ErrorKind::kDocMismatch, "feedback for unknown document " + id);
    for (const auto& q : make_queries(fb, opt.k)) query_list << q.key() << '\t' << tsv_field(q.text) << '\n';
  }
  run.write("queries.tsv", query_list.str());

  const EmbeddingTable empty_queries(EmbeddingRole::kDprQuery, 1);
  const EmbeddingTable empty_contexts(EmbeddingRole::kDprContext, 1);
  const auto qt = tables.find(EmbeddingRole::kDprQuery);
  const auto ct = tables.find(EmbeddingRole::kDprContext);
  const EmbeddingTable& query_table = qt == tables.end() ? empty_queries : qt->second;
  const EmbeddingTable& context_table = ct == tables.end() ? empty_contexts : ct->second;

  std::vector<std::string> missing;
  for (const auto& [id, fb] : feedback) {
    const auto ids = missing_label_embeddings(fb, by_id.at(id)->passages.size(), opt.k, query_table,
                                              context_table);
    missing.insert(missing.end(), ids.begin(), ids.end());
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += "\n  " + id;
    throw Error(ErrorKind::kMissingEmbedding, std::to_string(missing.size()) + " ids" + list);
  }

  std::vector<const FeedbackDocument*> order;
  for (const auto& [id, fb] : feedback) order.push_back(&fb);
  std::vector<LabelSet> labels(order.size());
  parallel_for(order.size(), opt.workers, [&](std::size_t i) {
    const auto& fb = *order[i];
    labels[i] = generate_labels(fb, by_id.at(fb.doc_id)->passages.size(), opt.k, opt.m, query_table,
                                context_table);
  });
  run.write("labels.tsv", encode_labels(labels));
}

void cmd_train(const Options& opt, Run& run) {
  run.config()["epochs"] = opt.epochs;
  run.config()["learning_rate"] = fmt(opt.learning_rate);
  run.config()["fd_check"] = opt.fd_check;
  const auto docs = load_corpus(opt, run);
  const auto by_id = index_by_id(docs);
  require_path(opt.labels, "--labels");
  const auto labels = load_labels(opt.labels, run);
  const auto tables = load_tables(opt, run);
  const auto& sentences = need_table(tables, EmbeddingRole::kSentence);

  std::map<std::string, const LabelSet*> label_by_id;
  for (const auto& l : labels) {
    if (!by_id.contains(l.doc_id)) throw Error(ErrorKind::kDocMismatch, "labels for unknown document " + l.doc_id);
    if (!label_by_id.emplace(l.doc_id, &l).second) {
      throw Error(ErrorKind::kDuplicateId, "labels for " + l.doc_id + " given twice");
    }
  }
  std::vector<gat::TrainExample> dataset;
  for (const auto& d : docs) {
    const auto it = label_by_id.find(d.doc_id);
    if (it == label_by_id.end()) continue;
    auto g = build_graph(d);
    auto x = gat::init_node_features(g, sentences);
    dataset.push_back({std::move(g), std::move(x), *it->second});
  }

  gat::TrainConfig config;
  config.epochs = opt.epochs;
  config.learning_rate = opt.learning_rate;
  config.seed = opt.seed;
  gat::ModelShape shape;
  shape.input_dim = sentences.dim();
  const auto result = gat::train(dataset, config, shape);

  run.write("model.gat", gat::encode_checkpoint(result.model));
  std::ostringstream history;
  history << "epoch\ttrain_loss\tvalidation_loss\n";
  for (const auto& r : result.history) {
    history << r.epoch << '\t' << fmt(r.train_loss) << '\t' << fmt(r.validation_loss) << '\n';
  }
  run.write("history.tsv", history.str());

  auto id_list = [&](const std::vector<std::size_t>& idx) {
    std::string s;
    for (const auto i : idx) s += (s.empty() ? "" : ",") + dataset[i].graph.doc_id();
    return s;
  };
  std::ostringstream meta;
  meta << "seed\t" << opt.seed << "\nepochs\t" << opt.epochs << "\nlearning_rate\t" << fmt(opt.learning_rate)
       << "\nbest_epoch\t" << result.best_epoch << "\nbest_validation_loss\t"
       << fmt(result.best_validation_loss) << "\ntrain_docs\t" << id_list(result.train_indices)
       << "\nvalidation_docs\t" << id_list(result.validation_indices) << '\n';
  run.write("model.meta", meta.str());

  if (!opt.fd_check) return;
  const auto& example = dataset[result.train_indices.front()];
  const auto model = gat::cast_model<double>(result.model);
  const auto ctx = gat::GraphContext::from_graph(example.graph);
  const gat::Matrix<double> x = example.features.cast<double>();
  const auto targets = gat::passage_targets(example.graph, example.labels);
  gat::GradientCheckOptions check;
  check.max_per_tensor = 4;
  check.sample_seed = opt.seed;
  const auto report = gat::check_gradients(model, ctx, x, targets, check);
  std::ostringstream table;
  table << "tensor\tchecked\tfailures\tmax_relative_error\n";
  for (const auto& t : report.tensors) {
    table << t.name << '\t' << t.checked << '\t' << t.failures << '\t' << fmt(t.max_relative_error) << '\n';
  }
  run.write("fd_check.tsv", table.str());
  if (!report.passed()) throw InvariantViolation("finite-difference gradient check failed, see fd_check.tsv");
}

void cmd_select(const Options& opt, Run& run) {
  run.config()["score"] = opt.score;
  const auto docs = load_corpus(opt, run);
  const auto tables = load_tables(opt, run);
  const auto& sentences = need_table(tables, EmbeddingRole::kSentence);
  require_path(opt.checkpoint, "--checkpoint");
  const auto model = gat::read_checkpoint(opt.checkpoint);
  run.add_input(opt.checkpoint);
  if (model.shape.input_dim != sentences.dim()) {
    throw Error(ErrorKind::kShapeMismatch, "checkpoint expects dim " + std::to_string(model.shape.input_dim) +
                                               ", embeddings have " + std::to_string(sentences.dim()));
  }
  const auto feedback = load_feedback_map(opt, run);

  std::vector<std::set<std::size_t>> picked(docs.size());
  parallel_for(docs.size(), opt.workers, [&](std::size_t i) {
    const auto g = build_graph(docs[i]);
    picked[i] = gat::predict_salient(model, g, gat::init_node_features(g, sentences));
  });
  Selections selections;
  for (std::size_t i = 0; i < docs.size(); ++i) selections[docs[i].doc_id] = picked[i];

  run.write("selections.tsv", encode_selections(selections));
  run.write("reduction.tsv", encode_reduction(docs, selections));
  write_prompts(docs, selections, feedback, run);

  if (!opt.score) return;
  require_path(opt.labels, "--labels");
  std::vector<LabelSet> gold;
  for (auto& l : load_labels(opt.labels, run)) {
    if (selections.contains(l.doc_id)) gold.push_back(std::move(l));
  }
  std::ostringstream scores;
  write_scores(scores, score_corpus(selections, gold));
  run.write("scores.tsv", scores.str());
}

void cmd_prompt(const Options& opt, Run& run) {
  const auto docs = load_corpus(opt, run);
  require_path(opt.selections, "--selections");
  const auto selections = read_selection_file(opt.selections);
  run.add_input(opt.selections);
  const auto by_id = index_by_id(docs);
  for (const auto& [id, sel] : selections) {
    if (!by_id.contains(id)) throw Error(ErrorKind::kUnknownPassageId, "selection for unknown document " + id);
  }
  write_prompts(docs, selections, load_feedback_map(opt, run), run);
}

void cmd_stats(const Options& opt, Run& run) {
  const auto docs = load_corpus(opt, run);
  require_path(opt.selections, "--selections");
  const auto selections = read_selection_file(opt.selections);
  run.add_input(opt.selections);
  run.write("reduction.tsv", encode_reduction(docs, selections));
}

void cmd_score(const Options& opt, Run& run) {
  require_path(opt.selections, "--selections");
  require_path(opt.labels, "--labels");
  const auto selections = read_selection_file(opt.selections);
  run.add_input(opt.selections);
  const auto gold = load_labels(opt.labels, run);
  std::ostringstream scores;
  write_scores(scores, score_corpus(selections, gold));
  run.write("scores.tsv", scores.str());
}

}  // namespace papergraph::cli
