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

#include "enclab/monogamy.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace enclab {

std::vector<OrientedTriangle> orientations(const Triangle& t) {
  OrientedTriangle p = t;
  std::sort(p.begin(), p.end());
  std::vector<OrientedTriangle> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

EntropicExpression WeightedTriangle::inequality() const {
  return chain_inequality(std::span<const std::string>(cycle.data(), cycle.size()));
}

EntropicExpression MonogamyCertificate::combination() const {
  EntropicExpression sum;
  for (const auto& t : triangles) sum += t.multiplier * t.inequality();
  return sum;
}

VerifyResult verify(const MonogamyCertificate& cert) {
  for (const auto& t : cert.triangles) {
    const auto& [x, y, z] = t.cycle;
    const std::string name = "(" + x + "," + y + "," + z + ")";
    if (t.multiplier < 0) {
      return {false, "negative multiplier " + to_string(t.multiplier) + " on triangle " + name};
    }
    if (x == y || y == z || x == z) return {false, "degenerate triangle " + name};
    for (const auto& [u, v] : {std::pair{x, y}, std::pair{y, z}, std::pair{x, z}}) {
      if (!cert.joint.has_edge(u, v)) {
        return {false, "triangle " + name + " uses non-edge (" + u + "," + v + ")"};
      }
    }
  }
  const EntropicExpression sum = cert.combination();
  for (const auto& [term, c] : sum.terms()) {
    if (cert.target.coefficient(term.first, term.second) == 0) {
      return {false, "uncancelled term H(" + term.first + "|" + term.second + ") with coefficient " +
                         to_string(c) + " is absent from the target"};
    }
  }
  std::set<EntropyTerm> keys;
  for (const auto& [term, c] : sum.terms()) keys.insert(term);
  for (const auto& [term, c] : cert.target.terms()) keys.insert(term);
  for (const auto& [x, y] : keys) {
    const Rational have = sum.coefficient(x, y);
    const Rational want = cert.target.coefficient(x, y);
    if (have != want) {
      return {false, "term H(" + x + "|" + y + ") has coefficient " + to_string(have) +
                         " in the triangle sum but " + to_string(want) + " in the target"};
    }
  }
  return {true, {}};
}

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::kFound:
      return "found";
    case SearchStatus::kExhausted:
      return "exhausted";
    case SearchStatus::kBudgetExhausted:
      return "budget exhausted";
  }
  return "unknown";
}

std::string DeriveResult::diagnostic() const {
  switch (status) {
    case SearchStatus::kFound:
      return "certificate found after " + std::to_string(decompositions_examined) +
             " decomposition(s)";
    case SearchStatus::kExhausted:
      return "no certificate: all " + std::to_string(decompositions_examined) +
             " chordal decomposition(s) examined";
    case SearchStatus::kBudgetExhausted:
      return "budget exhausted after " + std::to_string(decompositions_examined) +
             " decomposition(s); a certificate may still exist";
  }
  return {};
}

namespace {

/// Dense simplex tableau over exact rationals, Bland's rule throughout.
class Tableau {
 public:
  // Columns [0, cols) are variables; the last column is the right-hand side.
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<std::size_t> basis)
      : rows_(std::move(rows)), basis_(std::move(basis)) {}

  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return rows_.empty() ? 0 : rows_[0].size() - 1; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Rational& rhs(std::size_t r) const { return rows_[r].back(); }
  const Rational& at(std::size_t r, std::size_t c) const { return rows_[r][c]; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = rows_[r][c];
    for (auto& v : rows_[r]) v /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      const Rational f = rows_[i][c];
      for (std::size_t j = 0; j < rows_[i].size(); ++j) rows_[i][j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  void drop_row(std::size_t r) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  /// Minimizes cost . x over columns with allowed[c]; problem is bounded
  /// below for the costs used here.
  void minimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t c = 0; c < col_count() && !entering; ++c) {
        if (!allowed[c] || is_basic(c)) continue;
        Rational reduced = cost[c];
        for (std::size_t r = 0; r < row_count(); ++r) reduced -= cost[basis_[r]] * rows_[r][c];
        if (reduced < 0) entering = c;
      }
      if (!entering) return;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t r = 0; r < row_count(); ++r) {
        if (rows_[r][*entering] <= 0) continue;
        const Rational ratio = rows_[r].back() / rows_[r][*entering];
        if (!leaving || ratio < best || (ratio == best && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best = ratio;
        }
      }
      if (!leaving) return;  // unbounded; cannot happen with nonnegative costs
      pivot(*leaving, *entering);
    }
  }

 private:
  bool is_basic(std::size_t c) const {
    return std::find(basis_.begin(), basis_.end(), c) != basis_.end();
  }

  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace

std::optional<std::vector<Rational>> solve_nonnegative_min_sum(
    const std::vector<std::vector<Rational>>& rows,
    const std::vector<Rational>& rhs) {
  if (rows.size() != rhs.size()) throw MonogamyError("row count does not match rhs");
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows[0].size();
  if (m == 0) return std::vector<Rational>{};
  // Columns: n originals, m artificials, rhs.
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(n + m + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    if (rows[r].size() != n) throw MonogamyError("ragged constraint matrix");
    const Rational sign = rhs[r] < 0 ? -1 : 1;
    for (std::size_t c = 0; c < n; ++c) t[r][c] = sign * rows[r][c];
    t[r][n + r] = 1;
    t[r][n + m] = sign * rhs[r];
    basis[r] = n + r;
  }
  Tableau tab(std::move(t), std::move(basis));

  std::vector<Rational> phase1(n + m, 0);
  for (std::size_t c = n; c < n + m; ++c) phase1[c] = 1;
  tab.minimize(phase1, std::vector<bool>(n + m, true));
  for (std::size_t r = 0; r < tab.row_count(); ++r) {
    if (tab.basis()[r] >= n && tab.rhs(r) != 0) return std::nullopt;
  }
  // Drive zero-valued artificials out of the basis; rows with no original
  // column left are redundant.
  for (std::size_t r = tab.row_count(); r-- > 0;) {
    if (tab.basis()[r] < n) continue;
    std::optional<std::size_t> col;
    for (std::size_t c = 0; c < n && !col; ++c) {
      if (tab.at(r, c) != 0) col = c;
    }
    if (col) {
      tab.pivot(r, *col);
    } else {
      tab.drop_row(r);
    }
  }

  std::vector<Rational> phase2(n + m, 0);
  std::vector<bool> allowed(n + m, false);
  for (std::size_t c = 0; c < n; ++c) {
    phase2[c] = 1;
    allowed[c] = true;
  }
  tab.minimize(phase2, allowed);

  std::vector<Rational> x(n, 0);
  for (std::size_t r = 0; r < tab.row_count(); ++r) {
    if (tab.basis()[r] < n) x[tab.basis()[r]] = tab.rhs(r);
  }
  return x;
}

namespace {

struct CandidateSet {
  std::vector<OrientedTriangle> cycles;
  std::vector<EntropicExpression> inequalities;
};

CandidateSet candidates_for(const ChordalDecomposition& d) {
  CandidateSet out;
  std::set<OrientedTriangle> seen;
  for (const auto& g : d.subgraphs) {
    for (const auto& t : triangles(g)) {
      for (const auto& o : orientations(t)) {
        if (!seen.insert(o).second) continue;
        out.cycles.push_back(o);
        out.inequalities.push_back(
            chain_inequality(std::span<const std::string>(o.data(), o.size())));
      }
    }
  }
  return out;
}

std::optional<std::vector<WeightedTriangle>> solve_certificate(
    const ChordalDecomposition& d, const EntropicExpression& target) {
  const CandidateSet cand = candidates_for(d);
  std::set<EntropyTerm> keys;
  for (const auto& [term, c] : target.terms()) keys.insert(term);
  for (const auto& e : cand.inequalities) {
    for (const auto& [term, c] : e.terms()) keys.insert(term);
  }
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& [x, y] : keys) {
    std::vector<Rational> row;
    row.reserve(cand.inequalities.size());
    for (const auto& e : cand.inequalities) row.push_back(e.coefficient(x, y));
    rows.push_back(std::move(row));
    rhs.push_back(target.coefficient(x, y));
  }
  auto solution = solve_nonnegative_min_sum(rows, rhs);
  if (!solution) return std::nullopt;
  std::vector<WeightedTriangle> out;
  for (std::size_t i = 0; i < cand.cycles.size(); ++i) {
    if ((*solution)[i] != 0) out.push_back({cand.cycles[i], (*solution)[i]});
  }
  return out;
}

}  // namespace

DeriveResult derive_monogamy(const CommutationGraph& joint,
                             std::span<const EntropicExpression> targets,
                             const DeriveOptions& options) {
  if (targets.empty()) throw MonogamyError("no target inequalities given");
  EntropicExpression total;
  std::set<Edge> required;
  for (const auto& target : targets) {
    for (const auto& [term, c] : target.terms()) {
      if (!joint.has_edge(term.first, term.second)) {
        throw MonogamyError("target term H(" + term.first + "|" + term.second +
                            ") is not an edge of the joint graph");
      }
      required.insert(make_edge(term.first, term.second));
    }
    total += target;
  }

  DeriveResult result;
  const std::size_t m = options.max_subgraphs == 0 ? targets.size() : options.max_subgraphs;
  chordal_edge_decompositions(joint, required, m, [&](const ChordalDecomposition& d) {
    if (result.decompositions_examined >= options.budget) {
      result.status = SearchStatus::kBudgetExhausted;
      return false;
    }
    ++result.decompositions_examined;
    if (auto tris = solve_certificate(d, total)) {
      result.status = SearchStatus::kFound;
      result.certificate = MonogamyCertificate{joint, std::move(*tris), total, d};
      return false;
    }
    return true;
  });
  return result;
}

ChshTripartiteExample chsh_tripartite_example() {
  const std::vector<std::string> alice{"A0", "A1"};
  const std::vector<std::string> bob{"B0", "B1"};
  const std::vector<std::string> charlie{"E0", "E1"};
  std::vector<Edge> edges;
  for (const auto* left : {&alice, &bob}) {
    for (const auto* right : {&bob, &charlie}) {
      if (left == right) continue;
      for (const auto& u : *left) {
        for (const auto& v : *right) edges.emplace_back(u, v);
      }
    }
  }
  ChshTripartiteExample ex;
  ex.joint = CommutationGraph({"A0", "A1", "B0", "B1", "E0", "E1"}, edges);
  ex.targets = {entropic_chsh("A0", "A1", "B0", "B1", ChshForm::Sec2b),
                entropic_chsh("A0", "A1", "E0", "E1", ChshForm::Sec2b)};
  const DeriveResult r = derive_monogamy(ex.joint, ex.targets);
  if (!r.certificate) throw MonogamyError("built-in CHSH example: " + r.diagnostic());
  ex.certificate = *r.certificate;
  return ex;
}

ChordEliminationExample chord_elimination_example() {
  ChordEliminationExample ex;
  ex.graph = CommutationGraph(
      {"X1", "X2", "X3", "X4"},
      {{"X1", "X2"}, {"X2", "X3"}, {"X3", "X4"}, {"X4", "X1"}, {"X2", "X4"}});
  ex.cyclic = chain_inequality({"X1", "X2", "X4"});
  ex.anti_cyclic = chain_inequality({"X2", "X3", "X4"});
  ex.sum = ex.cyclic + ex.anti_cyclic;
  return ex;
}

}  // namespace enclab
