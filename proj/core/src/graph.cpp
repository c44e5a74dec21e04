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

#include "papergraph/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <queue>

#include "papergraph/error.hpp"

namespace papergraph {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::kPaper: return "paper";
    case NodeKind::kHeading: return "heading";
    case NodeKind::kSubHeading: return "subheading";
    case NodeKind::kPassage: return "passage";
    case NodeKind::kSentence: return "sentence";
  }
  return "?";
}

const char* to_string(EdgeKind kind) {
  return kind == EdgeKind::kHier ? "hier" : "seq";
}

void DocGraph::finalize() {
  for (auto& e : edges_) {
    if (e.src > e.dst) std::swap(e.src, e.dst);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end(),
                           [](const Edge& a, const Edge& b) {
                             return a.src == b.src && a.dst == b.dst;
                           }),
               edges_.end());

  adjacency_.assign(nodes_.size(), {});
  for (const auto& e : edges_) {
    if (e.src == e.dst || e.dst >= nodes_.size()) {
      throw Error(ErrorKind::kShapeMismatch, "edge out of range or self-loop");
    }
    adjacency_[e.src].push_back(e.dst);
    adjacency_[e.dst].push_back(e.src);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

  passage_nodes_.clear();
  sentence_nodes_.clear();
  for (const auto& n : nodes_) {
    auto* index = n.kind == NodeKind::kPassage    ? &passage_nodes_
                  : n.kind == NodeKind::kSentence ? &sentence_nodes_
                                                  : nullptr;
    if (index == nullptr) continue;
    if (index->size() <= n.ref) index->resize(n.ref + 1, nodes_.size());
    (*index)[n.ref] = n.id;
  }
}

DocGraph DocGraph::from_parts(std::string doc_id, std::vector<Node> nodes,
                              std::vector<Edge> edges) {
  DocGraph g;
  g.doc_id_ = std::move(doc_id);
  g.nodes_ = std::move(nodes);
  for (std::size_t i = 0; i < g.nodes_.size(); ++i) g.nodes_[i].id = i;
  g.edges_ = std::move(edges);
  g.finalize();
  return g;
}

DocGraph build_graph(const SegmentedDocument& seg, const GraphOptions& options) {
  if (seg.passages.empty()) {
    throw Error(ErrorKind::kEmptyDocument, seg.doc_id + ": no passages");
  }
  DocGraph g;
  g.doc_id_ = seg.doc_id;

  auto add_node = [&](NodeKind kind, std::size_t ref) {
    const std::size_t id = g.nodes_.size();
    g.nodes_.push_back({id, kind, ref});
    return id;
  };
  auto add_edge = [&](std::size_t a, std::size_t b, EdgeKind kind) {
    g.edges_.push_back({std::min(a, b), std::max(a, b), kind});
  };

  // Passages grouped by attach point, in document order.
  std::vector<std::vector<std::size_t>> by_heading(seg.headings.size());
  for (const auto& p : seg.passages) by_heading.at(p.heading).push_back(p.id);

  const std::size_t root = add_node(NodeKind::kPaper, 0);
  std::size_t previous_group_tail = SIZE_MAX;

  auto emit_passages = [&](std::size_t parent, std::size_t heading) {
    std::size_t prev = SIZE_MAX;
    for (const std::size_t pid : by_heading[heading]) {
      const auto& passage = seg.passages[pid];
      const std::size_t pnode = add_node(NodeKind::kPassage, pid);
      add_edge(parent, pnode, EdgeKind::kHier);
      if (prev != SIZE_MAX) {
        add_edge(prev, pnode, EdgeKind::kSeq);
      } else if (options.chain_across_sections &&
                 previous_group_tail != SIZE_MAX) {
        add_edge(previous_group_tail, pnode, EdgeKind::kSeq);
      }
      prev = pnode;
      std::size_t prev_sentence = SIZE_MAX;
      for (const auto& s : passage.sentences) {
        const std::size_t snode = add_node(NodeKind::kSentence, s.id);
        add_edge(pnode, snode, EdgeKind::kHier);
        if (prev_sentence != SIZE_MAX) {
          add_edge(prev_sentence, snode, EdgeKind::kSeq);
        }
        prev_sentence = snode;
      }
    }
    if (prev != SIZE_MAX) previous_group_tail = prev;
  };

  for (std::size_t h = 0; h < seg.headings.size(); ++h) {
    if (seg.headings[h].tier != 1) continue;
    const std::size_t hnode = add_node(NodeKind::kHeading, h);
    add_edge(root, hnode, EdgeKind::kHier);
    emit_passages(hnode, h);
    for (std::size_t sh = h + 1; sh < seg.headings.size(); ++sh) {
      if (seg.headings[sh].tier == 1) break;
      if (seg.headings[sh].parent != static_cast<std::int64_t>(h)) continue;
      const std::size_t snode = add_node(NodeKind::kSubHeading, sh);
      add_edge(hnode, snode, EdgeKind::kHier);
      emit_passages(snode, sh);
    }
  }
  g.finalize();
  return g;
}

namespace {

// Hierarchical parent of every node, or SIZE_MAX for the root/unreached.
std::vector<std::size_t> hier_parents(const DocGraph& g,
                                      std::vector<std::size_t>* depth) {
  std::vector<std::vector<std::size_t>> hier(g.node_count());
  for (const auto& e : g.edges()) {
    if (e.kind != EdgeKind::kHier) continue;
    hier[e.src].push_back(e.dst);
    hier[e.dst].push_back(e.src);
  }
  std::vector<std::size_t> parent(g.node_count(), SIZE_MAX);
  std::vector<std::size_t> d(g.node_count(), SIZE_MAX);
  if (g.node_count() == 0) return parent;
  std::queue<std::size_t> queue;
  d[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop();
    for (const auto v : hier[u]) {
      if (d[v] != SIZE_MAX) continue;
      d[v] = d[u] + 1;
      parent[v] = u;
      queue.push(v);
    }
  }
  if (depth != nullptr) *depth = std::move(d);
  return parent;
}

}  // namespace

GraphStats graph_stats(const DocGraph& g) {
  GraphStats stats;
  for (const auto& n : g.nodes()) {
    ++stats.kind_counts[static_cast<std::size_t>(n.kind)];
  }
  for (const auto& e : g.edges()) {
    (e.kind == EdgeKind::kHier ? stats.hier_edges : stats.seq_edges) += 1;
  }
  std::vector<std::size_t> depth;
  hier_parents(g, &depth);
  for (const auto d : depth) {
    if (d != SIZE_MAX) stats.max_depth = std::max(stats.max_depth, d);
  }
  return stats;
}

std::vector<std::string> check_graph_invariants(const DocGraph& g) {
  std::vector<std::string> problems;
  const auto& nodes = g.nodes();
  if (nodes.empty()) return {"graph has no nodes"};

  std::size_t papers = 0;
  for (const auto& n : nodes) papers += n.kind == NodeKind::kPaper;
  if (papers != 1 || nodes[0].kind != NodeKind::kPaper) {
    problems.push_back("expected exactly one paper node at id 0");
  }

  std::size_t hier = 0;
  for (const auto& e : g.edges()) {
    if (e.src >= e.dst) problems.push_back("edge not canonical (src < dst)");
    if (e.kind == EdgeKind::kHier) ++hier;
  }
  if (hier + 1 != nodes.size()) {
    problems.push_back("|E_hier| != |V| - 1");
  }

  std::vector<std::size_t> depth;
  const auto parent = hier_parents(g, &depth);
  for (std::size_t v = 1; v < nodes.size(); ++v) {
    if (depth[v] == SIZE_MAX) {
      problems.push_back("node " + std::to_string(v) + " unreachable by hier edges");
      continue;
    }
    if (depth[v] > 4) problems.push_back("node " + std::to_string(v) + " deeper than 4");
  }

  for (const auto& e : g.edges()) {
    if (e.kind != EdgeKind::kSeq) continue;
    const auto ka = nodes[e.src].kind;
    const auto kb = nodes[e.dst].kind;
    const bool same = ka == kb && (ka == NodeKind::kPassage || ka == NodeKind::kSentence);
    if (!same) {
      problems.push_back("seq edge between incompatible kinds");
      continue;
    }
    if (parent[e.src] != parent[e.dst]) {
      problems.push_back("seq edge " + std::to_string(e.src) + "-" +
                         std::to_string(e.dst) + " crosses parents");
    }
    if (nodes[e.dst].ref != nodes[e.src].ref + 1) {
      problems.push_back("seq edge joins non-consecutive units");
    }
  }
  return problems;
}

void write_graph_dump(std::ostream& out, const DocGraph& g) {
  out << "graph " << g.doc_id() << ' ' << g.node_count() << ' '
      << g.edges().size() << '\n';
  for (const auto& n : g.nodes()) {
    out << "node " << n.id << ' ' << to_string(n.kind) << ' ' << n.ref << '\n';
  }
  for (const auto& e : g.edges()) {
    out << "edge " << e.src << ' ' << e.dst << ' ' << to_string(e.kind) << '\n';
  }
}

}  // namespace papergraph
