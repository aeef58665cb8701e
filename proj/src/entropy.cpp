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

#include "enclab/entropy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace enclab {

EntropicExpression& EntropicExpression::add_term(const std::string& x,
                                                 const std::string& y,
                                                 const Rational& coeff) {
  if (x == y) throw EntropyError("H(" + x + "|" + x + ") is not a valid term");
  if (coeff == 0) return *this;
  auto [it, inserted] = terms_.try_emplace({x, y}, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

Rational EntropicExpression::coefficient(const std::string& x,
                                         const std::string& y) const {
  auto it = terms_.find({x, y});
  return it == terms_.end() ? Rational(0) : it->second;
}

EntropicExpression& EntropicExpression::operator+=(const EntropicExpression& other) {
  if (&other == this) return *this = Rational(2) * other;
  for (const auto& [term, c] : other.terms_) add_term(term.first, term.second, c);
  return *this;
}

EntropicExpression operator*(const Rational& q, EntropicExpression e) {
  if (q == 0) return {};
  for (auto& [term, c] : e.terms_) c *= q;
  return e;
}

std::string EntropicExpression::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [term, c] : terms_) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    if (magnitude != 1) out << enclab::to_string(magnitude) << " ";
    out << "H(" << term.first << "|" << term.second << ")";
    first = false;
  }
  return out.str();
}

EntropicExpression chain_inequality(std::span<const std::string> cycle) {
  const std::size_t n = cycle.size();
  if (n < 3) throw EntropyError("chain inequality needs at least 3 observables");
  if (std::set<std::string>(cycle.begin(), cycle.end()).size() != n) {
    throw EntropyError("chain inequality labels must be distinct");
  }
  EntropicExpression e;
  e.add_term(cycle[0], cycle[n - 1], 1);
  for (std::size_t k = 0; k + 1 < n; ++k) e.add_term(cycle[k], cycle[k + 1], -1);
  return e;
}

EntropicExpression chain_inequality(std::initializer_list<std::string> cycle) {
  return chain_inequality(std::span<const std::string>(cycle.begin(), cycle.size()));
}

ChshForm parse_chsh_form(const std::string& text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "eq4") return ChshForm::Eq4;
  if (lower == "sec2b") return ChshForm::Sec2b;
  throw std::invalid_argument("unknown CHSH form '" + text + "' (expected EQ4 or SEC2B)");
}

std::string to_string(ChshForm form) {
  return form == ChshForm::Eq4 ? "EQ4" : "SEC2B";
}

EntropicExpression entropic_chsh(const std::string& a0, const std::string& a1,
                                 const std::string& b0, const std::string& b1,
                                 ChshForm form) {
  if (std::set<std::string>{a0, a1, b0, b1}.size() != 4) {
    throw EntropyError("entropic CHSH needs four distinct observables");
  }
  EntropicExpression e;
  switch (form) {
    case ChshForm::Eq4:
      e.add_term(a1, b1, 1).add_term(a1, b0, -1).add_term(b0, a0, -1).add_term(a0, b1, -1);
      break;
    case ChshForm::Sec2b:
      e.add_term(a0, b0, 1).add_term(a0, b1, -1).add_term(b1, a1, -1).add_term(a1, b0, -1);
      break;
  }
  return e;
}

EntropicExpression combine(const EntropicExpression& e1,
                           const EntropicExpression& e2, const Rational& q1,
                           const Rational& q2) {
  return q1 * e1 + q2 * e2;
}

JointDistribution::JointDistribution(std::vector<std::vector<int>> outcomes,
                                     std::vector<double> probabilities)
    : outcomes_(std::move(outcomes)), probabilities_(std::move(probabilities)) {
  if (outcomes_.empty()) throw EntropyError("joint distribution needs at least one variable");
  std::size_t cells = 1;
  for (const auto& o : outcomes_) {
    if (o.empty()) throw EntropyError("variable with no outcomes");
    cells *= o.size();
  }
  if (cells != probabilities_.size()) {
    throw EntropyError("probability table has " + std::to_string(probabilities_.size()) +
                       " entries, expected " + std::to_string(cells));
  }
  double total = 0.0;
  for (double& p : probabilities_) {
    if (!(p >= -kTolerance)) {
      throw EntropyError("negative probability " + std::to_string(p));
    }
    p = std::max(p, 0.0);
    total += p;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities sum to " << total << ", not 1";
    throw EntropyError(msg.str());
  }
  for (double& p : probabilities_) p /= total;
}

std::vector<std::size_t> JointDistribution::shape() const {
  std::vector<std::size_t> s;
  for (const auto& o : outcomes_) s.push_back(o.size());
  return s;
}

double JointDistribution::at(std::span<const std::size_t> index) const {
  if (index.size() != outcomes_.size()) throw EntropyError("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t v = 0; v < index.size(); ++v) {
    if (index[v] >= outcomes_[v].size()) throw EntropyError("outcome index out of range");
    flat = flat * outcomes_[v].size() + index[v];
  }
  return probabilities_[flat];
}

JointDistribution JointDistribution::marginal(std::span<const std::size_t> keep) const {
  const std::size_t vars = outcomes_.size();
  std::vector<std::vector<int>> kept_outcomes;
  for (auto v : keep) {
    if (v >= vars) throw EntropyError("marginal variable out of range");
    kept_outcomes.push_back(outcomes_[v]);
  }
  if (std::set<std::size_t>(keep.begin(), keep.end()).size() != keep.size()) {
    throw EntropyError("marginal variables must be distinct");
  }
  std::size_t cells = 1;
  for (const auto& o : kept_outcomes) cells *= o.size();
  std::vector<double> out(cells, 0.0);
  std::vector<std::size_t> digit(vars, 0);
  for (double p : probabilities_) {
    std::size_t flat = 0;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      flat = flat * outcomes_[keep[k]].size() + digit[keep[k]];
    }
    out[flat] += p;
    for (std::size_t v = vars; v-- > 0;) {
      if (++digit[v] < outcomes_[v].size()) break;
      digit[v] = 0;
    }
  }
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& p : out) p /= total;
  return JointDistribution(std::move(kept_outcomes), std::move(out));
}

JointDistribution JointDistribution::marginal(std::initializer_list<std::size_t> keep) const {
  return marginal(std::span<const std::size_t>(keep.begin(), keep.size()));
}

JointDistribution transpose(const JointDistribution& joint) {
  if (joint.variable_count() != 2) throw EntropyError("transpose needs a two-variable joint");
  return joint.marginal({1, 0});
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double conditional_entropy(const JointDistribution& joint) {
  if (joint.variable_count() != 2) {
    throw EntropyError("conditional entropy needs a two-variable joint");
  }
  const double h_xy = shannon_entropy(joint.probabilities());
  const double h_y = shannon_entropy(joint.marginal({1}).probabilities());
  // Rounding can leave -1e-16 when X is a function of Y.
  return std::max(0.0, h_xy - h_y);
}

GlobalDistributionModel::GlobalDistributionModel(std::vector<std::string> labels,
                                                 JointDistribution global)
    : labels_(std::move(labels)), global_(std::move(global)) {
  if (labels_.size() != global_.variable_count()) {
    throw ModelError("label count does not match the number of variables");
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
    throw ModelError("duplicate variable label");
  }
}

JointDistribution GlobalDistributionModel::joint(const std::string& x,
                                                 const std::string& y) const {
  auto pos = [&](const std::string& l) {
    auto it = std::find(labels_.begin(), labels_.end(), l);
    if (it == labels_.end()) throw ModelError("model has no variable '" + l + "'");
    return static_cast<std::size_t>(it - labels_.begin());
  };
  if (x == y) throw ModelError("pair (" + x + "," + y + ") repeats a variable");
  return global_.marginal({pos(x), pos(y)});
}

void PairTableModel::set(const std::string& x, const std::string& y,
                         JointDistribution joint) {
  if (joint.variable_count() != 2) throw ModelError("pair table must have two variables");
  tables_.insert_or_assign({x, y}, std::move(joint));
}

JointDistribution PairTableModel::joint(const std::string& x,
                                        const std::string& y) const {
  if (auto it = tables_.find({x, y}); it != tables_.end()) return it->second;
  if (auto it = tables_.find({y, x}); it != tables_.end()) return transpose(it->second);
  throw ModelError("model supplies no distribution for pair (" + x + "," + y + ")");
}

double evaluate(const EntropicExpression& expr, const ProbabilityModel& model) {
  double total = 0.0;
  for (const auto& [term, c] : expr.terms()) {
    total += to_double(c) * conditional_entropy(model.joint(term.first, term.second));
  }
  return total;
}

}  // namespace enclab
