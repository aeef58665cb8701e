// Copyright 2026 The enc-lab Authors
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
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace enclab {

class GraphError : public std::invalid_argument {
 public:
  explicit GraphError(const std::string& message)
      : std::invalid_argument(message) {}
};

/// Unordered vertex pair, stored with the lexicographically smaller label
/// first.
using Edge = std::pair<std::string, std::string>;

Edge make_edge(const std::string& u, const std::string& v);

/// Vertex triple sorted lexicographically.
using Triangle = std::array<std::string, 3>;

/**
 * Commutation graph of a measurement scenario: vertices are observables,
 * edges join jointly measurable (commuting) pairs.
 *
 * Vertex order is the declaration order; edges are normalized and
 * deduplicated, so (u,v) and (v,u) denote the same edge.
 */
class CommutationGraph {
 public:
  CommutationGraph() = default;
  CommutationGraph(std::vector<std::string> vertices,
                   const std::vector<Edge>& edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::set<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(const std::string& label) const;
  bool has_edge(const std::string& u, const std::string& v) const;
  std::size_t degree(const std::string& label) const;
  std::vector<std::string> neighbors(const std::string& label) const;

  /// Position of `label` in vertices(); throws GraphError if absent.
  std::size_t index_of(const std::string& label) const;

  /// True iff every vertex and every edge of *this is present in `parent`.
  bool is_subgraph_of(const CommutationGraph& parent) const;

  friend bool operator==(const CommutationGraph& a, const CommutationGraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> vertices_;
  std::set<Edge> edges_;
  std::map<std::string, std::size_t> index_;
};

CommutationGraph make_graph(std::vector<std::string> vertices,
                            const std::vector<Edge>& edges);

/// n-cycle v0 - v1 - ... - v_{n-1} - v0. Requires n >= 3.
CommutationGraph cycle_graph(const std::vector<std::string>& vertices);

/// Maximum-cardinality search followed by a perfect-elimination-ordering
/// check.
bool is_chordal(const CommutationGraph& g);

/// All vertex triples with the three pairwise edges present, sorted.
std::vector<Triangle> triangles(const CommutationGraph& g);

struct ChordalDecomposition {
  std::vector<CommutationGraph> subgraphs;
  std::set<Edge> covered_edges;

  friend bool operator==(const ChordalDecomposition&,
                         const ChordalDecomposition&) = default;
};

/// Return false from the visitor to stop the enumeration.
using DecompositionVisitor = std::function<bool(const ChordalDecomposition&)>;

struct DecompositionSearchStats {
  std::size_t yielded = 0;
  /// True when the visitor asked to stop before the search space was exhausted.
  bool stopped = false;
};

/**
 * Enumerates covers of `required` by at most `m` chordal subgraphs of
 * `joint`, each required edge assigned to exactly one subgraph.
 *
 * A subgraph consists of the required edges assigned to it plus a set of
 * chords: joint-graph edges outside `required` whose endpoints both lie in
 * the subgraph. Every edge of a yielded subgraph lies in one of its
 * triangles, so each subgraph is a union of 3-cycles. Slots are
 * interchangeable; assignments are canonical (the first edge of a slot
 * precedes the first edge of every later slot) and explored in
 * lexicographic edge order, with chord sets ordered by size then
 * lexicographically.
 *
 * Throws GraphError when a required edge is not a joint edge or m == 0.
 */
DecompositionSearchStats chordal_edge_decompositions(
    const CommutationGraph& joint, const std::set<Edge>& required,
    std::size_t m, const DecompositionVisitor& visit);

/// Collects up to `limit` decompositions.
std::vector<ChordalDecomposition> collect_chordal_edge_decompositions(
    const CommutationGraph& joint, const std::set<Edge>& required,
    std::size_t m, std::size_t limit = 1000);

}  // namespace enclab
