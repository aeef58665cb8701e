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
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "enclab/quantum.hpp"

namespace enclab {

class PauliError : public std::invalid_argument {
 public:
  explicit PauliError(const std::string& message) : std::invalid_argument(message) {}
};

enum class PauliLetter { I = 0, X = 1, Y = 2, Z = 3 };

/**
 * n-qubit Pauli tensor product with its base-4 index: digit k (most
 * significant first) is the letter on qubit k, with I,X,Y,Z = 0,1,2,3.
 * For example index 3 on 3 qubits is I⊗I⊗Z and 48 is Z⊗I⊗I.
 */
class PauliString {
 public:
  PauliString(std::size_t index, std::size_t qubits);
  explicit PauliString(std::vector<PauliLetter> letters);

  std::size_t index() const { return index_; }
  std::size_t qubits() const { return letters_.size(); }
  const std::vector<PauliLetter>& letters() const { return letters_; }
  /// e.g. "IIZ".
  std::string str() const;
  ComplexMatrix matrix() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.letters_ == b.letters_;
  }
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.index_ <=> b.index_;
  }

 private:
  std::vector<PauliLetter> letters_;
  std::size_t index_ = 0;
};

PauliString base4_pauli(std::size_t index, std::size_t qubits);

/// Coefficients c_i = tr(M B_i) / 2^n keyed by Pauli index; entries with
/// |c| < 1e-13 are dropped.
struct PauliDecomposition {
  std::size_t qubits = 0;
  std::map<std::size_t, double> coefficients;

  double coefficient(std::size_t index) const;
  ComplexMatrix reconstruct() const;
};

PauliDecomposition decompose(const ComplexMatrix& m, std::size_t qubits);

/// b_i = tr(rho B_i) for each requested string.
std::map<std::size_t, double> expectations(const DensityOperator& rho,
                                           std::span<const PauliString> strings);

/// All 4^n expectation values of rho.
std::map<std::size_t, double> all_expectations(const DensityOperator& rho);

/// sum c_i b_i, clipped into [0,1] when within 1e-9 outside it.
double probability_from_expectations(const PauliDecomposition& dec,
                                     const std::map<std::size_t, double>& b);

/// One observable of a printed readout probability with its qubit.
struct PlacedOutcome {
  std::string observable;
  int outcome = 1;
  std::size_t qubit = 0;
};

/// A probability as printed: its label, placement, and coefficient list.
struct PrintedReadout {
  std::string label;
  std::vector<PlacedOutcome> factors;
  /// (Pauli index, printed coefficient), in printed order; index 0 is I.
  std::vector<std::pair<std::size_t, double>> coefficients;
};

/// Golden fixture of the printed readout decompositions (three-decimal
/// values, 36 probabilities, 252 coefficients).
const std::vector<PrintedReadout>& printed_readouts();

struct ReadoutRow {
  std::string probability;
  std::size_t string_index = 0;
  double printed = 0.0;
  double regenerated = 0.0;
  double deviation = 0.0;
};

struct ReadoutReport {
  double theta = 0.0;
  std::vector<ReadoutRow> rows;
  double max_deviation = 0.0;
  /// Nonzero regenerated coefficients (|c| > 5e-4) that the print omits.
  std::size_t unprinted_terms = 0;

  bool pass(double tolerance = 0.002) const {
    return max_deviation <= tolerance && unprinted_terms == 0;
  }
  /// Columns: probability, string_index, printed, regenerated, abs_dev.
  void write_csv(std::ostream& out) const;
};

/// Projector for the joint outcome of the listed placed observables.
ComplexMatrix readout_projector(std::span<const PlacedOutcome> factors,
                                const std::map<std::string, ObservableSpec>& observables,
                                std::size_t qubits = 3);

/// Regenerates every printed coefficient from default_observables(theta).
ReadoutReport readout_report(double theta);

}  // namespace enclab
