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

#include "enclab/graph.hpp"

#include <algorithm>
#include <limits>

namespace enclab {

Edge make_edge(const std::string& u, const std::string& v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

CommutationGraph::CommutationGraph(std::vector<std::string> vertices,
                                   const std::vector<Edge>& edges)
    : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) {
      throw GraphError("duplicate vertex label '" + vertices_[i] + "'");
    }
  }
  for (const auto& [u, v] : edges) {
    if (u == v) throw GraphError("self-loop on vertex '" + u + "'");
    if (!has_vertex(u) || !has_vertex(v)) {
      throw GraphError("edge (" + u + "," + v + ") has an undeclared endpoint");
    }
    edges_.insert(make_edge(u, v));
  }
}

bool CommutationGraph::has_vertex(const std::string& label) const {
  return index_.contains(label);
}

bool CommutationGraph::has_edge(const std::string& u,
                                const std::string& v) const {
  return edges_.contains(make_edge(u, v));
}

std::size_t CommutationGraph::degree(const std::string& label) const {
  return neighbors(label).size();
}

std::vector<std::string> CommutationGraph::neighbors(
    const std::string& label) const {
  index_of(label);
  std::vector<std::string> out;
  for (const auto& v : vertices_) {
    if (v != label && has_edge(label, v)) out.push_back(v);
  }
  return out;
}

std::size_t CommutationGraph::index_of(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw GraphError("unknown vertex '" + label + "'");
  return it->second;
}

bool CommutationGraph::is_subgraph_of(const CommutationGraph& parent) const {
  return std::all_of(vertices_.begin(), vertices_.end(),
                     [&](const auto& v) { return parent.has_vertex(v); }) &&
         std::all_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
           return parent.has_edge(e.first, e.second);
         });
}

CommutationGraph make_graph(std::vector<std::string> vertices,
                            const std::vector<Edge>& edges) {
  return CommutationGraph(std::move(vertices), edges);
}

CommutationGraph cycle_graph(const std::vector<std::string>& vertices) {
  if (vertices.size() < 3) {
    throw GraphError("a cycle needs at least 3 vertices");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    edges.emplace_back(vertices[i], vertices[(i + 1) % vertices.size()]);
  }
  return CommutationGraph(vertices, edges);
}

namespace {

using Adjacency = std::vector<std::vector<bool>>;

Adjacency adjacency_of(const CommutationGraph& g) {
  Adjacency adj(g.vertex_count(), std::vector<bool>(g.vertex_count(), false));
  for (const auto& [u, v] : g.edges()) {
    const auto i = g.index_of(u);
    const auto j = g.index_of(v);
    adj[i][j] = adj[j][i] = true;
  }
  return adj;
}

bool is_chordal(const Adjacency& adj) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> numbered(n, false);
  std::vector<std::size_t> position(n, 0);
  // MCS numbers vertices from n-1 down to 0; increasing number is the
  // candidate elimination order.
  for (std::size_t step = n; step-- > 0;) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!numbered[v] && (best == n || weight[v] > weight[best])) best = v;
    }
    numbered[best] = true;
    position[best] = step;
    for (std::size_t u = 0; u < n; ++u) {
      if (adj[best][u] && !numbered[u]) ++weight[u];
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t parent = n;
    for (std::size_t u = 0; u < n; ++u) {
      if (adj[v][u] && position[u] > position[v] &&
          (parent == n || position[u] < position[parent])) {
        parent = u;
      }
    }
    if (parent == n) continue;
    for (std::size_t w = 0; w < n; ++w) {
      if (w != parent && adj[v][w] && position[w] > position[v] &&
          !adj[parent][w]) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_chordal(const CommutationGraph& g) { return is_chordal(adjacency_of(g)); }

std::vector<Triangle> triangles(const CommutationGraph& g) {
  std::vector<std::string> sorted = g.vertices();
  std::sort(sorted.begin(), sorted.end());
  std::vector<Triangle> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (!g.has_edge(sorted[i], sorted[j])) continue;
      for (std::size_t k = j + 1; k < sorted.size(); ++k) {
        if (g.has_edge(sorted[i], sorted[k]) && g.has_edge(sorted[j], sorted[k])) {
          out.push_back({sorted[i], sorted[j], sorted[k]});
        }
      }
    }
  }
  return out;
}

namespace {

constexpr std::size_t kMaxChordCandidates = 20;

class DecompositionSearch {
 public:
  DecompositionSearch(const CommutationGraph& joint,
                      const std::set<Edge>& required, std::size_t m,
                      const DecompositionVisitor& visit)
      : joint_(joint),
        required_set_(required),
        required_(required.begin(), required.end()),
        slots_(m),
        assignment_(required_.size(), kUnassigned),
        visit_(visit) {}

  DecompositionSearchStats run() {
    if (!required_.empty()) assign(0, 0);
    return stats_;
  }

 private:
  static constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

  // Returns false once the visitor has asked to stop.
  bool assign(std::size_t next, std::size_t used) {
    if (next == required_.size()) return emit_leaf(used);
    const std::size_t limit = std::min(used + 1, slots_);
    for (std::size_t s = 0; s < limit; ++s) {
      assignment_[next] = s;
      if (triangle_still_possible()) {
        if (!assign(next + 1, std::max(used, s + 1))) return false;
      }
      assignment_[next] = kUnassigned;
    }
    return true;
  }

  // Edge (a,b) can still belong to slot s: a non-required joint edge, or a
  // required edge assigned to s or not yet assigned.
  bool usable_in_slot(const std::string& a, const std::string& b,
                      std::size_t s) const {
    if (!joint_.has_edge(a, b)) return false;
    const Edge e = make_edge(a, b);
    auto it = std::lower_bound(required_.begin(), required_.end(), e);
    if (it == required_.end() || *it != e) return true;
    const auto owner = assignment_[static_cast<std::size_t>(it - required_.begin())];
    return owner == kUnassigned || owner == s;
  }

  bool triangle_still_possible() const {
    for (std::size_t i = 0; i < required_.size(); ++i) {
      const auto s = assignment_[i];
      if (s == kUnassigned) continue;
      const auto& [u, v] = required_[i];
      bool found = false;
      for (const auto& w : joint_.vertices()) {
        if (w != u && w != v && usable_in_slot(u, w, s) && usable_in_slot(v, w, s)) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }

  CommutationGraph build_subgraph(const std::vector<Edge>& edges) const {
    std::set<std::string> present;
    for (const auto& [u, v] : edges) {
      present.insert(u);
      present.insert(v);
    }
    std::vector<std::string> vertices;
    for (const auto& v : joint_.vertices()) {
      if (present.contains(v)) vertices.push_back(v);
    }
    return CommutationGraph(std::move(vertices), edges);
  }

  static bool every_edge_in_triangle(const CommutationGraph& g) {
    std::set<Edge> covered;
    for (const auto& t : triangles(g)) {
      covered.insert({t[0], t[1]});
      covered.insert({t[0], t[2]});
      covered.insert({t[1], t[2]});
    }
    return covered.size() == g.edge_count();
  }

  // All chord completions of a slot that are chordal unions of triangles.
  std::vector<CommutationGraph> slot_options(const std::vector<Edge>& base) const {
    std::set<std::string> present;
    for (const auto& [u, v] : base) {
      present.insert(u);
      present.insert(v);
    }
    std::vector<Edge> chords;
    for (const auto& e : joint_.edges()) {
      if (!required_set_.contains(e) && present.contains(e.first) &&
          present.contains(e.second)) {
        chords.push_back(e);
      }
    }
    if (chords.size() > kMaxChordCandidates) {
      throw GraphError("too many candidate chords (" + std::to_string(chords.size()) +
                       ") for exhaustive decomposition search");
    }
    std::vector<CommutationGraph> options;
    const std::size_t c = chords.size();
    for (std::size_t k = 0; k <= c; ++k) {
      // Lexicographic k-combinations of the chord list.
      std::vector<bool> pick(c, false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        std::vector<Edge> edges = base;
        for (std::size_t i = 0; i < c; ++i) {
          if (pick[i]) edges.push_back(chords[i]);
        }
        CommutationGraph g = build_subgraph(edges);
        if (every_edge_in_triangle(g) && is_chordal(g)) options.push_back(std::move(g));
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return options;
  }

  bool emit_leaf(std::size_t used) {
    std::vector<std::vector<CommutationGraph>> options(used);
    for (std::size_t s = 0; s < used; ++s) {
      std::vector<Edge> base;
      for (std::size_t i = 0; i < required_.size(); ++i) {
        if (assignment_[i] == s) base.push_back(required_[i]);
      }
      options[s] = slot_options(base);
      if (options[s].empty()) return true;
    }
    std::vector<std::size_t> odometer(used, 0);
    while (true) {
      ChordalDecomposition d;
      d.covered_edges = required_set_;
      for (std::size_t s = 0; s < used; ++s) d.subgraphs.push_back(options[s][odometer[s]]);
      ++stats_.yielded;
      if (!visit_(d)) {
        stats_.stopped = true;
        return false;
      }
      bool advanced = false;
      for (std::size_t s = used; s-- > 0;) {
        if (++odometer[s] < options[s].size()) {
          advanced = true;
          break;
        }
        odometer[s] = 0;
      }
      if (!advanced) return true;
    }
  }

  const CommutationGraph& joint_;
  const std::set<Edge>& required_set_;
  std::vector<Edge> required_;
  std::size_t slots_;
  std::vector<std::size_t> assignment_;
  const DecompositionVisitor& visit_;
  DecompositionSearchStats stats_;
};

}  // namespace

DecompositionSearchStats chordal_edge_decompositions(
    const CommutationGraph& joint, const std::set<Edge>& required,
    std::size_t m, const DecompositionVisitor& visit) {
  if (m == 0) throw GraphError("decomposition needs at least one subgraph");
  std::set<Edge> normalized;
  for (const auto& [u, v] : required) {
    if (!joint.has_edge(u, v)) {
      throw GraphError("required edge (" + u + "," + v + ") is not in the joint graph");
    }
    normalized.insert(make_edge(u, v));
  }
  return DecompositionSearch(joint, normalized, m, visit).run();
}

std::vector<ChordalDecomposition> collect_chordal_edge_decompositions(
    const CommutationGraph& joint, const std::set<Edge>& required,
    std::size_t m, std::size_t limit) {
  std::vector<ChordalDecomposition> out;
  if (limit == 0) return out;
  chordal_edge_decompositions(joint, required, m, [&](const ChordalDecomposition& d) {
    out.push_back(d);
    return out.size() < limit;
  });
  return out;
}

}  // namespace enclab
