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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "enclab/entropy.hpp"
#include "enclab/graph.hpp"
#include "enclab/rational.hpp"

namespace enclab {

class MonogamyError : public std::invalid_argument {
 public:
  explicit MonogamyError(const std::string& message)
      : std::invalid_argument(message) {}
};

/// A 3-cycle inequality written along (x, y, z):
/// H(x|z) - H(x|y) - H(y|z) <= 0.
using OrientedTriangle = std::array<std::string, 3>;

/// The six orientations (apex and direction) of a triangle, in
/// lexicographic permutation order.
std::vector<OrientedTriangle> orientations(const Triangle& t);

struct WeightedTriangle {
  OrientedTriangle cycle;
  Rational multiplier;

  EntropicExpression inequality() const;

  friend bool operator==(const WeightedTriangle&, const WeightedTriangle&) = default;
};

/**
 * Nonnegative combination of 3-cycle inequalities whose exact sum is the
 * target expression. Since every 3-cycle inequality holds for any
 * distribution, the target is <= 0 whenever the triangle marginals come
 * from a joint distribution.
 */
struct MonogamyCertificate {
  CommutationGraph joint;
  std::vector<WeightedTriangle> triangles;
  EntropicExpression target;
  ChordalDecomposition decomposition;

  /// Sum of multiplier * inequality over all triangles.
  EntropicExpression combination() const;
};

struct VerifyResult {
  bool ok = false;
  /// First failure found; empty when ok.
  std::string diagnostic;

  explicit operator bool() const { return ok; }
};

VerifyResult verify(const MonogamyCertificate& cert);

enum class SearchStatus {
  kFound,
  /// Every decomposition was examined without a certificate.
  kExhausted,
  /// The decomposition budget ran out first; absence is not established.
  kBudgetExhausted,
};

std::string to_string(SearchStatus status);

struct DeriveOptions {
  static constexpr std::size_t kDefaultBudget = 10000;

  /// Cap on decompositions examined.
  std::size_t budget = kDefaultBudget;
  /// Maximum number of chordal subgraphs; 0 means one per target.
  std::size_t max_subgraphs = 0;
};

struct DeriveResult {
  SearchStatus status = SearchStatus::kExhausted;
  std::optional<MonogamyCertificate> certificate;
  std::size_t decompositions_examined = 0;

  std::string diagnostic() const;
};

/**
 * Searches chordal decompositions of `joint` covering every edge used by
 * `targets`, and for each one looks for nonnegative rational multipliers on
 * the oriented triangles of its subgraphs reproducing the sum of `targets`.
 * Among feasible multiplier vectors the one with the least total weight is
 * returned. Deterministic: the first decomposition in enumeration order that
 * admits a solution wins.
 *
 * Throws MonogamyError if a target term is not a joint edge or no targets
 * are given.
 */
DeriveResult derive_monogamy(const CommutationGraph& joint,
                             std::span<const EntropicExpression> targets,
                             const DeriveOptions& options = {});

/**
 * Exact solve of A x = b, x >= 0, minimizing sum(x). `rows` is A in
 * row-major form. Returns nullopt when infeasible.
 */
std::optional<std::vector<Rational>> solve_nonnegative_min_sum(
    const std::vector<std::vector<Rational>>& rows,
    const std::vector<Rational>& rhs);

struct ChshTripartiteExample {
  CommutationGraph joint;
  std::vector<EntropicExpression> targets;
  MonogamyCertificate certificate;
};

/// Alice (A0,A1), Bob (B0,B1), Charlie (E0,E1): every cross-party pair
/// commutes; targets are the Alice-Bob and Alice-Charlie CHSH expressions
/// in SEC2B form.
ChshTripartiteExample chsh_tripartite_example();

struct ChordEliminationExample {
  /// 4-cycle X1-X2-X3-X4 plus the chord (X2,X4).
  CommutationGraph graph;
  /// Cyclic inequality on (X1,X2,X4): contains -H(X2|X4).
  EntropicExpression cyclic;
  /// Anti-cyclic inequality on (X2,X3,X4): contains +H(X2|X4).
  EntropicExpression anti_cyclic;
  /// cyclic + anti_cyclic: the 4-cycle inequality without the chord term.
  EntropicExpression sum;
};

ChordEliminationExample chord_elimination_example();

}  // namespace enclab
