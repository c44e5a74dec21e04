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

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "papergraph/document.hpp"

namespace papergraph {

enum class NodeKind : std::uint8_t {
  kPaper = 0,
  kHeading = 1,
  kSubHeading = 2,
  kPassage = 3,
  kSentence = 4,
};
inline constexpr std::size_t kNodeKindCount = 5;

enum class EdgeKind : std::uint8_t { kHier = 0, kSeq = 1 };

const char* to_string(NodeKind kind);
const char* to_string(EdgeKind kind);

struct Node {
  std::size_t id = 0;
  NodeKind kind = NodeKind::kPaper;
  // Heading index for (sub-)headings, passage id, or sentence id.
  std::size_t ref = 0;
};

// Stored once per undirected edge, with src < dst.
struct Edge {
  std::size_t src = 0;
  std::size_t dst = 0;
  EdgeKind kind = EdgeKind::kHier;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct GraphOptions {
  // Unverified extension: also link the last passage under one parent to the
  // first passage under the next parent.
  bool chain_across_sections = false;
};

class DocGraph {
 public:
  DocGraph() = default;

  const std::string& doc_id() const { return doc_id_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }

  // Sorted neighbor lists, symmetric, without self-loops.
  const std::vector<std::size_t>& neighbors(std::size_t node) const {
    return adjacency_[node];
  }

  // Node id of each passage, indexed by passage id.
  const std::vector<std::size_t>& passage_nodes() const { return passage_nodes_; }
  // Node id of each sentence, indexed by sentence id.
  const std::vector<std::size_t>& sentence_nodes() const { return sentence_nodes_; }

  // Builds a graph directly from node and edge lists (used by tests and
  // permutation checks). Edges are canonicalized and de-duplicated.
  static DocGraph from_parts(std::string doc_id, std::vector<Node> nodes,
                             std::vector<Edge> edges);

 private:
  friend DocGraph build_graph(const SegmentedDocument&, const GraphOptions&);

  void finalize();

  std::string doc_id_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> passage_nodes_;
  std::vector<std::size_t> sentence_nodes_;
};

// Root -> headings -> sub-headings -> passages -> sentences, plus sequential
// edges between consecutive passages sharing a parent and consecutive
// sentences of one passage. Node ids follow depth-first document order.
DocGraph build_graph(const SegmentedDocument& seg,
                     const GraphOptions& options = {});

struct GraphStats {
  std::array<std::size_t, kNodeKindCount> kind_counts{};
  std::size_t hier_edges = 0;
  std::size_t seq_edges = 0;
  std::size_t max_depth = 0;  // hierarchical hops from the root

  std::size_t count(NodeKind kind) const {
    return kind_counts[static_cast<std::size_t>(kind)];
  }
};

GraphStats graph_stats(const DocGraph& g);

// Structural invariants; returns a description of every violation.
std::vector<std::string> check_graph_invariants(const DocGraph& g);

// Text dump: "node <id> <kind> <ref>" lines, then "edge <src> <dst> <kind>".
void write_graph_dump(std::ostream& out, const DocGraph& g);

}  // namespace papergraph
