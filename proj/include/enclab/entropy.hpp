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

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "enclab/rational.hpp"

namespace enclab {

class EntropyError : public std::invalid_argument {
 public:
  explicit EntropyError(const std::string& message)
      : std::invalid_argument(message) {}
};

/// Ordered pair (X, Y) standing for the conditional entropy H(X|Y).
using EntropyTerm = std::pair<std::string, std::string>;

/**
 * Rational-weighted sum of conditional entropies, sum c_XY * H(X|Y).
 *
 * Canonical form: zero coefficients are never stored, so two expressions
 * are equal iff their term maps are equal. H(X|Y) and H(Y|X) are distinct
 * terms.
 */
class EntropicExpression {
 public:
  using TermMap = std::map<EntropyTerm, Rational>;

  EntropicExpression() = default;

  /// Adds `coeff` to the coefficient of H(x|y). x == y is rejected.
  EntropicExpression& add_term(const std::string& x, const std::string& y,
                               const Rational& coeff);

  Rational coefficient(const std::string& x, const std::string& y) const;
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  EntropicExpression& operator+=(const EntropicExpression& other);
  friend EntropicExpression operator+(EntropicExpression a,
                                      const EntropicExpression& b) {
    return a += b;
  }
  friend EntropicExpression operator*(const Rational& q, EntropicExpression e);

  friend bool operator==(const EntropicExpression&,
                         const EntropicExpression&) = default;

  /// e.g. "H(A0|B0) - H(A0|B1) - 2/3 H(B1|A1)"; "0" for the empty sum.
  std::string to_string() const;

 private:
  TermMap terms_;
};

/// H(X0|X_{n-1}) - sum_{k=0}^{n-2} H(X_k|X_{k+1}); n >= 3 distinct labels.
EntropicExpression chain_inequality(std::span<const std::string> cycle);
EntropicExpression chain_inequality(std::initializer_list<std::string> cycle);

/// Two printed orderings of the entropic CHSH expression.
enum class ChshForm {
  /// H(A1|B1) - H(A1|B0) - H(B0|A0) - H(A0|B1)
  Eq4,
  /// H(A0|B0) - H(A0|B1) - H(B1|A1) - H(A1|B0)
  Sec2b,
};

ChshForm parse_chsh_form(const std::string& text);
std::string to_string(ChshForm form);

EntropicExpression entropic_chsh(const std::string& a0, const std::string& a1,
                                 const std::string& b0, const std::string& b1,
                                 ChshForm form);

/// q1*e1 + q2*e2 with exact cancellation.
EntropicExpression combine(const EntropicExpression& e1,
                           const EntropicExpression& e2, const Rational& q1,
                           const Rational& q2);

/**
 * Normalized probability table over the outcomes of one or more discrete
 * variables, stored row-major (the last variable varies fastest).
 */
class JointDistribution {
 public:
  static constexpr double kTolerance = 1e-12;

  /// Validates normalization (within kTolerance) and nonnegativity; entries
  /// in [-kTolerance, 0) are clipped to 0 and the table renormalized.
  JointDistribution(std::vector<std::vector<int>> outcomes,
                    std::vector<double> probabilities);

  std::size_t variable_count() const { return outcomes_.size(); }
  const std::vector<std::vector<int>>& outcomes() const { return outcomes_; }
  std::span<const double> probabilities() const { return probabilities_; }
  std::vector<std::size_t> shape() const;

  double at(std::span<const std::size_t> index) const;

  /// Marginal over the listed variables, in the listed order.
  JointDistribution marginal(std::span<const std::size_t> keep) const;
  JointDistribution marginal(std::initializer_list<std::size_t> keep) const;

 private:
  std::vector<std::vector<int>> outcomes_;
  std::vector<double> probabilities_;
};

/// Shannon entropy in bits, 0*log 0 = 0.
double shannon_entropy(std::span<const double> probabilities);

/// H(X|Y) = H(X,Y) - H(Y) in bits, where X is variable 0 and Y variable 1
/// of a two-variable joint.
double conditional_entropy(const JointDistribution& joint);

/// Supplies the joint distribution of a commuting pair, variable 0 = x.
class ProbabilityModel {
 public:
  virtual ~ProbabilityModel() = default;
  virtual JointDistribution joint(const std::string& x,
                                  const std::string& y) const = 0;
};

class ModelError : public std::out_of_range {
 public:
  explicit ModelError(const std::string& message) : std::out_of_range(message) {}
};

/// Pair marginals of one explicit global distribution; label i names variable i.
class GlobalDistributionModel : public ProbabilityModel {
 public:
  GlobalDistributionModel(std::vector<std::string> labels,
                          JointDistribution global);
  JointDistribution joint(const std::string& x,
                          const std::string& y) const override;

 private:
  std::vector<std::string> labels_;
  JointDistribution global_;
};

/// Explicitly tabulated pair distributions. (y,x) is answered by
/// transposing a stored (x,y) table.
class PairTableModel : public ProbabilityModel {
 public:
  void set(const std::string& x, const std::string& y, JointDistribution joint);
  JointDistribution joint(const std::string& x,
                          const std::string& y) const override;

 private:
  std::map<EntropyTerm, JointDistribution> tables_;
};

/// Swaps the two variables of a two-variable joint.
JointDistribution transpose(const JointDistribution& joint);

/// sum c_XY * H(X|Y) in bits; positive values are violations.
double evaluate(const EntropicExpression& expr, const ProbabilityModel& model);

}  // namespace enclab
