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

#include "enclab/pauli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string_view>

namespace enclab {

namespace {

constexpr double kDropThreshold = 1e-13;

Eigen::Matrix2cd letter_matrix(PauliLetter l) {
  Eigen::Matrix2cd m;
  switch (l) {
    case PauliLetter::I:
      m << 1, 0, 0, 1;
      break;
    case PauliLetter::X:
      m << 0, 1, 1, 0;
      break;
    case PauliLetter::Y:
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case PauliLetter::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return m;
}

std::size_t power_of_four(std::size_t n) { return std::size_t{1} << (2 * n); }

}  // namespace

PauliString::PauliString(std::size_t index, std::size_t qubits) : index_(index) {
  if (qubits > kMaxQubits) throw PauliError("too many qubits");
  if (index >= power_of_four(qubits)) {
    throw PauliError("Pauli index " + std::to_string(index) + " out of range for " +
                     std::to_string(qubits) + " qubits");
  }
  letters_.resize(qubits);
  for (std::size_t k = qubits; k-- > 0;) {
    letters_[k] = static_cast<PauliLetter>(index % 4);
    index /= 4;
  }
}

PauliString::PauliString(std::vector<PauliLetter> letters) : letters_(std::move(letters)) {
  if (letters_.size() > kMaxQubits) throw PauliError("too many qubits");
  for (auto l : letters_) index_ = index_ * 4 + static_cast<std::size_t>(l);
}

std::string PauliString::str() const {
  std::string s;
  for (auto l : letters_) s.push_back("IXYZ"[static_cast<std::size_t>(l)]);
  return s;
}

ComplexMatrix PauliString::matrix() const {
  std::map<std::size_t, Eigen::Matrix2cd> factors;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    if (letters_[q] != PauliLetter::I) factors.emplace(q, letter_matrix(letters_[q]));
  }
  return embed(letters_.size(), factors);
}

PauliString base4_pauli(std::size_t index, std::size_t qubits) {
  return PauliString(index, qubits);
}

double PauliDecomposition::coefficient(std::size_t index) const {
  auto it = coefficients.find(index);
  return it == coefficients.end() ? 0.0 : it->second;
}

ComplexMatrix PauliDecomposition::reconstruct() const {
  const Eigen::Index d = Eigen::Index{1} << qubits;
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (const auto& [index, c] : coefficients) m += c * PauliString(index, qubits).matrix();
  return m;
}

PauliDecomposition decompose(const ComplexMatrix& m, std::size_t qubits) {
  if (qubits > kMaxQubits) throw PauliError("too many qubits");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  if (m.rows() != d || m.cols() != d) {
    throw PauliError("operator is not " + std::to_string(d) + "x" + std::to_string(d));
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kEigenTolerance) {
    throw PauliError("operator is not Hermitian");
  }
  PauliDecomposition dec{qubits, {}};
  for (std::size_t i = 0; i < power_of_four(qubits); ++i) {
    const ComplexMatrix b = PauliString(i, qubits).matrix();
    const double c = (m.cwiseProduct(b.transpose())).sum().real() / static_cast<double>(d);
    if (std::abs(c) >= kDropThreshold) dec.coefficients.emplace(i, c);
  }
  return dec;
}

std::map<std::size_t, double> expectations(const DensityOperator& rho,
                                           std::span<const PauliString> strings) {
  std::map<std::size_t, double> out;
  for (const auto& s : strings) {
    if (s.qubits() != rho.qubits()) {
      throw PauliError("Pauli string " + s.str() + " does not match a " +
                       std::to_string(rho.qubits()) + "-qubit state");
    }
    out[s.index()] = (rho.matrix().cwiseProduct(s.matrix().transpose())).sum().real();
  }
  return out;
}

std::map<std::size_t, double> all_expectations(const DensityOperator& rho) {
  std::vector<PauliString> strings;
  for (std::size_t i = 0; i < power_of_four(rho.qubits()); ++i) {
    strings.emplace_back(i, rho.qubits());
  }
  return expectations(rho, strings);
}

double probability_from_expectations(const PauliDecomposition& dec,
                                     const std::map<std::size_t, double>& b) {
  double p = 0.0;
  for (const auto& [index, c] : dec.coefficients) {
    auto it = b.find(index);
    if (it == b.end()) {
      throw PauliError("missing expectation for Pauli string " +
                       PauliString(index, dec.qubits).str() + " (index " +
                       std::to_string(index) + ")");
    }
    p += c * it->second;
  }
  if (p < 0.0 && p >= -1e-9) p = 0.0;
  if (p > 1.0 && p <= 1.0 + 1e-9) p = 1.0;
  return p;
}

namespace {

// Printed readout decompositions at the published angle. Each line:
// label | observable=outcome@qubit ... | coefficient@pauli_index ...
// In the two-observable rows the first-written observable sits on qubit 0
// and the second on the partner's qubit, so "P(B1, A1)" puts A1 on qubit 1.
// One printed identity coefficient reads "+250I"; it is stored as 0.250.
constexpr std::string_view kPrintedReadouts = R"(
P(A1=+1) | A1=+1@0 | 0.286@16 0.410@48 0.500@0
P(B1=+1) | B1=+1@1 | 0.476@12 0.149@4 0.500@0
P(A0=+1, B0=+1) | A0=+1@0 B0=+1@1 | 0.152@12 0.197@4 0.250@48 0.197@52 0.152@60 0.250@0
P(A0=+1, B0=-1) | A0=+1@0 B0=-1@1 | -0.152@12 -0.197@4 0.250@48 -0.197@52 -0.152@60 0.250@0
P(A0=-1, B0=+1) | A0=-1@0 B0=+1@1 | 0.152@12 0.197@4 -0.250@48 -0.197@52 -0.152@60 0.250@0
P(A0=-1, B0=-1) | A0=-1@0 B0=-1@1 | -0.152@12 -0.197@4 -0.250@48 0.197@52 0.152@60 0.250@0
P(A0=+1, B1=+1) | A0=+1@0 B1=+1@1 | 0.238@12 0.074@4 0.250@48 0.074@52 0.238@60 0.250@0
P(A0=+1, B1=-1) | A0=+1@0 B1=-1@1 | -0.238@12 -0.074@4 0.250@48 -0.074@52 -0.238@60 0.250@0
P(A0=-1, B1=+1) | A0=-1@0 B1=+1@1 | 0.238@12 0.074@4 -0.250@48 -0.074@52 -0.238@60 0.250@0
P(A0=-1, B1=-1) | A0=-1@0 B1=-1@1 | -0.238@12 -0.074@4 -0.250@48 0.074@52 0.238@60 0.250@0
P(B1=+1, A1=+1) | B1=+1@0 A1=+1@1 | 0.205@12 0.074@16 0.042@20 0.061@28 0.143@4 0.238@48 0.136@52 0.195@60 0.250@0
P(B1=+1, A1=-1) | B1=+1@0 A1=-1@1 | -0.205@12 0.074@16 -0.042@20 -0.061@28 -0.143@4 0.238@48 -0.136@52 -0.195@60 0.250@0
P(B1=-1, A1=+1) | B1=-1@0 A1=+1@1 | 0.205@12 -0.074@16 -0.042@20 -0.061@28 0.143@4 -0.238@48 -0.136@52 -0.195@60 0.250@0
P(B1=-1, A1=-1) | B1=-1@0 A1=-1@1 | -0.205@12 -0.074@16 0.042@20 0.061@28 -0.143@4 -0.238@48 0.136@52 0.195@60 0.250@0
P(A1=+1, B0=+1) | A1=+1@0 B0=+1@1 | 0.152@12 0.143@16 0.113@20 0.078@28 0.197@4 0.205@48 0.162@52 0.125@60 0.250@0
P(A1=+1, B0=-1) | A1=+1@0 B0=-1@1 | -0.152@12 0.143@16 -0.113@20 -0.078@28 -0.197@4 0.205@48 -0.162@52 -0.125@60 0.250@0
P(A1=-1, B0=+1) | A1=-1@0 B0=+1@1 | 0.152@12 -0.143@16 -0.113@20 -0.078@28 0.197@4 -0.205@48 -0.162@52 -0.125@60 0.250@0
P(A1=-1, B0=-1) | A1=-1@0 B0=-1@1 | -0.152@12 -0.143@16 0.113@20 0.078@28 -0.197@4 -0.205@48 0.162@52 0.125@60 0.250@0
P(A1=+1) | A1=+1@0 | 0.286@16 0.410@48 0.500@0
P(E1=+1) | E1=+1@2 | 0.149@1 0.476@3 0.500@0
P(A0=+1, E0=+1) | A0=+1@0 E0=+1@2 | 0.197@1 0.152@3 0.250@48 0.197@49 0.152@51 0.250@0
P(A0=+1, E0=-1) | A0=+1@0 E0=-1@2 | -0.197@1 -0.152@3 0.250@48 -0.197@49 -0.152@51 0.250@0
P(A0=-1, E0=+1) | A0=-1@0 E0=+1@2 | 0.197@1 0.152@3 -0.250@48 -0.197@49 -0.152@51 0.250@0
P(A0=-1, E0=-1) | A0=-1@0 E0=-1@2 | -0.197@1 -0.152@3 -0.250@48 0.197@49 0.152@51 0.250@0
P(A0=+1, E1=+1) | A0=+1@0 E1=+1@2 | 0.074@1 0.238@3 0.250@48 0.074@49 0.238@51 0.250@0
P(A0=+1, E1=-1) | A0=+1@0 E1=-1@2 | -0.074@1 -0.238@3 0.250@48 -0.074@49 -0.238@51 0.250@0
P(A0=-1, E1=+1) | A0=-1@0 E1=+1@2 | 0.074@1 0.238@3 -0.250@48 -0.074@49 -0.238@51 0.250@0
P(A0=-1, E1=-1) | A0=-1@0 E1=-1@2 | -0.074@1 -0.238@3 -0.250@48 0.074@49 0.238@51 0.250@0
P(E1=+1, A1=+1) | E1=+1@0 A1=+1@2 | 0.143@1 0.074@16 0.042@17 0.061@19 0.205@3 0.238@48 0.136@49 0.195@51 0.250@0
P(E1=+1, A1=-1) | E1=+1@0 A1=-1@2 | -0.143@1 0.074@16 -0.042@17 -0.061@19 -0.205@3 0.238@48 -0.136@49 -0.195@51 0.250@0
P(E1=-1, A1=+1) | E1=-1@0 A1=+1@2 | 0.1430@1 -0.074@16 -0.042@17 -0.061@19 0.205@3 -0.238@48 -0.136@49 -0.195@51 0.250@0
P(E1=-1, A1=-1) | E1=-1@0 A1=-1@2 | -0.143@1 -0.074@16 0.042@17 0.061@19 -0.205@3 -0.238@48 0.136@49 0.195@51 0.250@0
P(A1=+1, E0=+1) | A1=+1@0 E0=+1@2 | 0.197@1 0.143@16 0.113@17 0.078@19 0.152@3 0.205@48 0.162@49 0.125@51 0.250@0
P(A1=+1, E0=-1) | A1=+1@0 E0=-1@2 | -0.197@1 0.143@16 -0.113@17 -0.078@19 -0.152@3 0.205@48 -0.162@49 -0.125@51 0.250@0
P(A1=-1, E0=+1) | A1=-1@0 E0=+1@2 | 0.197@1 -0.143@16 -0.113@17 -0.078@19 0.152@3 -0.205@48 -0.162@49 -0.125@51 0.250@0
P(A1=-1, E0=-1) | A1=-1@0 E0=-1@2 | -0.197@1 -0.143@16 0.113@17 0.078@19 -0.152@3 -0.205@48 0.162@49 0.125@51 0.250@0
)";

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(' ');
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(' ') - b + 1);
}

std::vector<PrintedReadout> parse_printed_readouts() {
  std::vector<PrintedReadout> out;
  for (const auto& line : split(kPrintedReadouts, '\n')) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, '|');
    PrintedReadout r;
    r.label = trim(fields.at(0));
    std::istringstream placed(fields.at(1));
    for (std::string tok; placed >> tok;) {
      const auto eq = tok.find('=');
      const auto at = tok.find('@');
      r.factors.push_back({tok.substr(0, eq), std::stoi(tok.substr(eq + 1, at - eq - 1)),
                           std::stoul(tok.substr(at + 1))});
    }
    std::istringstream coeffs(fields.at(2));
    for (std::string tok; coeffs >> tok;) {
      const auto at = tok.find('@');
      r.coefficients.emplace_back(std::stoul(tok.substr(at + 1)), std::stod(tok.substr(0, at)));
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

const std::vector<PrintedReadout>& printed_readouts() {
  static const std::vector<PrintedReadout> fixture = parse_printed_readouts();
  return fixture;
}

ComplexMatrix readout_projector(std::span<const PlacedOutcome> factors,
                                const std::map<std::string, ObservableSpec>& observables,
                                std::size_t qubits) {
  std::map<std::size_t, Eigen::Matrix2cd> ops;
  for (const auto& f : factors) {
    auto it = observables.find(f.observable);
    if (it == observables.end()) throw PauliError("unknown observable '" + f.observable + "'");
    const ObservableSpec placed{it->second.bloch_angle, f.qubit};
    if (!ops.emplace(f.qubit, placed.projector(f.outcome)).second) {
      throw PauliError("two observables placed on qubit " + std::to_string(f.qubit));
    }
  }
  return embed(qubits, ops);
}

ReadoutReport readout_report(double theta) {
  const auto observables = default_observables(theta);
  ReadoutReport report;
  report.theta = theta;
  for (const auto& printed : printed_readouts()) {
    const PauliDecomposition dec = decompose(readout_projector(printed.factors, observables), 3);
    for (const auto& [index, value] : printed.coefficients) {
      const double regenerated = dec.coefficient(index);
      const double dev = std::abs(regenerated - value);
      report.rows.push_back({printed.label, index, value, regenerated, dev});
      report.max_deviation = std::max(report.max_deviation, dev);
    }
    for (const auto& [index, c] : dec.coefficients) {
      const bool listed = std::any_of(printed.coefficients.begin(), printed.coefficients.end(),
                                      [&](const auto& pc) { return pc.first == index; });
      if (!listed && std::abs(c) > 5e-4) ++report.unprinted_terms;
    }
  }
  return report;
}

void ReadoutReport::write_csv(std::ostream& out) const {
  out << "probability,string_index,printed,regenerated,abs_dev\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%.3f,%.6g,%.6g", static_cast<int>(r.string_index),
                  r.printed, r.regenerated, r.deviation);
    out << '"' << r.probability << "\"," << buf << '\n';
  }
}

}  // namespace enclab
