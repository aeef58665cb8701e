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

#include "enclab/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace enclab {

namespace {

std::size_t qubits_for_dimension(Eigen::Index dim) {
  for (std::size_t n = 0; n <= kMaxQubits; ++n) {
    if ((Eigen::Index{1} << n) == dim) return n;
  }
  throw QuantumError("dimension " + std::to_string(dim) +
                     " is not a power of two up to 2^" + std::to_string(kMaxQubits));
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // tr(a b) without forming the product.
  return (a.cwiseProduct(b.transpose())).sum().real();
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd m;
  m << 0, 1, 1, 0;
  return m;
}

Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues();
  for (auto& v : ev) v = v < kEigenTolerance ? 0.0 : std::sqrt(v);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw QuantumError("density matrix must be square");
  qubits_ = qubits_for_dimension(matrix_.rows());
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kEigenTolerance) {
    throw QuantumError("density matrix is not Hermitian");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kEigenTolerance) {
    throw QuantumError("density matrix trace is " + std::to_string(tr.real()) + ", not 1");
  }
  if (eigenvalues().minCoeff() < -kEigenTolerance) {
    throw QuantumError("density matrix has a negative eigenvalue");
  }
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw QuantumError("zero state vector");
  const StateVector v = psi / norm;
  return DensityOperator(v * v.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t qubits) {
  if (qubits > kMaxQubits) throw QuantumError("too many qubits");
  const Eigen::Index d = Eigen::Index{1} << qubits;
  return DensityOperator(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

Eigen::VectorXd DensityOperator::eigenvalues() const {
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(matrix_, Eigen::EigenvaluesOnly)
      .eigenvalues();
}

DensityOperator DensityOperator::mix(double p, const DensityOperator& a,
                                     const DensityOperator& b) {
  if (!(p >= 0.0 && p <= 1.0)) throw QuantumError("mixing weight outside [0,1]");
  if (a.dimension() != b.dimension()) throw QuantumError("dimension mismatch in mixture");
  return DensityOperator(p * a.matrix_ + (1.0 - p) * b.matrix_);
}

Eigen::Matrix2cd ObservableSpec::projector(int outcome) const {
  if (outcome != 1 && outcome != -1) throw QuantumError("outcome must be +1 or -1");
  const Eigen::Matrix2cd axis = std::cos(bloch_angle) * pauli_z() + std::sin(bloch_angle) * pauli_x();
  return 0.5 * (Eigen::Matrix2cd::Identity() + static_cast<double>(outcome) * axis);
}

ObservableSpec xz_observable(double alpha, std::size_t site) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(alpha, two_pi);
  if (a < 0.0) a += two_pi;
  return {a, site};
}

ComplexMatrix embed(std::size_t qubits,
                    const std::map<std::size_t, Eigen::Matrix2cd>& factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t q = 0; q < qubits; ++q) {
    auto it = factors.find(q);
    const Eigen::Matrix2cd f = it == factors.end() ? Eigen::Matrix2cd::Identity() : it->second;
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block(2 * i, 2 * j, 2, 2) = out(i, j) * f;
      }
    }
    out = std::move(next);
  }
  for (const auto& [site, f] : factors) {
    if (site >= qubits) throw QuantumError("site " + std::to_string(site) + " outside register");
  }
  return out;
}

DensityOperator pure_family(double p1, double p2) {
  if (p1 < 0.0 || p2 < 0.0) throw QuantumError("pure family weights must be nonnegative");
  if (p1 == 0.0 && p2 == 0.0) throw QuantumError("pure family undefined at p1 = p2 = 0");
  StateVector psi = StateVector::Zero(8);
  psi(0b001) = p1;
  psi(0b010) = p2;
  psi(0b111) = p1 + p2;
  return DensityOperator::from_pure(psi);
}

DensityOperator mixed_family(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw QuantumError("mixing weight p must lie in [0,1]");
  return DensityOperator::mix(p, pure_family(1.0, 0.0), pure_family(0.0, 1.0));
}

DensityOperator bell_with_spectator() { return pure_family(1.0, 0.0); }

std::map<std::string, ObservableSpec> default_observables(double theta) {
  const double step = 2.0 * theta / 3.0;
  return {
      {"A0", xz_observable(0.0, 0)},        {"B1", xz_observable(step, 1)},
      {"A1", xz_observable(2.0 * step, 0)}, {"B0", xz_observable(3.0 * step, 1)},
      {"E1", xz_observable(step, 2)},       {"E0", xz_observable(3.0 * step, 2)},
  };
}

std::map<std::string, ObservableSpec> observables_for_form(double theta, ChshForm form) {
  auto obs = default_observables(theta);
  if (form == ChshForm::Eq4) {
    std::swap(obs["A0"], obs["A1"]);
    std::swap(obs["B0"], obs["B1"]);
    std::swap(obs["E0"], obs["E1"]);
  }
  return obs;
}

JointDistribution joint_distribution(const DensityOperator& rho,
                                     const ObservableSpec& o1,
                                     const ObservableSpec& o2) {
  if (o1.site == o2.site) {
    throw QuantumError("observables on the same site " + std::to_string(o1.site) +
                       " do not commute");
  }
  std::vector<double> p;
  for (int a : {1, -1}) {
    for (int b : {1, -1}) {
      const ComplexMatrix proj =
          embed(rho.qubits(), {{o1.site, o1.projector(a)}, {o2.site, o2.projector(b)}});
      const double v = real_trace_product(rho.matrix(), proj);
      p.push_back(std::abs(v) < JointDistribution::kTolerance ? 0.0 : v);
    }
  }
  return JointDistribution({{1, -1}, {1, -1}}, std::move(p));
}

JointDistribution single_distribution(const DensityOperator& rho, const ObservableSpec& o) {
  std::vector<double> p;
  for (int a : {1, -1}) {
    const double v = real_trace_product(rho.matrix(), embed(rho.qubits(), {{o.site, o.projector(a)}}));
    p.push_back(std::abs(v) < JointDistribution::kTolerance ? 0.0 : v);
  }
  return JointDistribution({{1, -1}}, std::move(p));
}

BornModel::BornModel(DensityOperator rho, std::map<std::string, ObservableSpec> placement)
    : rho_(std::move(rho)), placement_(std::move(placement)) {
  for (const auto& [label, o] : placement_) {
    if (o.site >= rho_.qubits()) {
      throw QuantumError("observable " + label + " placed on site " + std::to_string(o.site) +
                         " outside a " + std::to_string(rho_.qubits()) + "-qubit register");
    }
  }
}

JointDistribution BornModel::joint(const std::string& x, const std::string& y) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find({x, y}); it != cache_.end()) return it->second;
  }
  auto find = [&](const std::string& l) -> const ObservableSpec& {
    auto it = placement_.find(l);
    if (it == placement_.end()) throw ModelError("no observable labelled '" + l + "'");
    return it->second;
  };
  const ObservableSpec& ox = find(x);
  const ObservableSpec& oy = find(y);
  if (ox.site == oy.site) {
    throw QuantumError("observables " + x + " and " + y + " share site " +
                       std::to_string(ox.site) + " and do not commute");
  }
  JointDistribution d = joint_distribution(rho_, ox, oy);
  std::lock_guard lock(mutex_);
  cache_.insert_or_assign({x, y}, d);
  return d;
}

double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dimension() != sigma.dimension()) throw QuantumError("fidelity dimension mismatch");
  const ComplexMatrix s = psd_sqrt(rho.matrix());
  const ComplexMatrix inner = s * sigma.matrix() * s;
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(
                           0.5 * (inner + inner.adjoint()), Eigen::EigenvaluesOnly)
                           .eigenvalues();
  double root_sum = 0.0;
  for (double v : ev) root_sum += v > kEigenTolerance ? std::sqrt(v) : 0.0;
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

DensityOperator depolarize(const DensityOperator& rho, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw QuantumError("noise lambda must lie in [0,1]");
  const auto d = rho.dimension();
  return DensityOperator((1.0 - lambda) * rho.matrix() +
                         lambda * ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityOperator haar_random_state(std::size_t qubits, std::mt19937_64& rng) {
  if (qubits > kMaxQubits) throw QuantumError("too many qubits");
  std::normal_distribution<double> normal(0.0, 1.0);
  StateVector psi(Eigen::Index{1} << qubits);
  for (auto& a : psi) {
    const double re = normal(rng);
    const double im = normal(rng);
    a = Complex(re, im);
  }
  return DensityOperator::from_pure(psi);
}

double chsh_violation(const DensityOperator& rho, double theta, ChshForm form) {
  const BornModel model(rho, observables_for_form(theta, form));
  return evaluate(entropic_chsh("A0", "A1", "B0", "B1", form), model);
}

ViolationOptimum maximize_violation(const DensityOperator& rho, ChshForm form,
                                    double theta_lo, double theta_hi,
                                    std::size_t grid_points) {
  if (grid_points < 3) throw QuantumError("need at least 3 grid points");
  if (!(theta_lo < theta_hi)) throw QuantumError("empty angle range");
  auto f = [&](double t) { return chsh_violation(rho, t, form); };
  const double h = (theta_hi - theta_lo) / static_cast<double>(grid_points - 1);
  std::size_t best = 0;
  double best_value = f(theta_lo);
  for (std::size_t i = 1; i < grid_points; ++i) {
    const double v = f(theta_lo + h * static_cast<double>(i));
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  double best_theta = theta_lo + h * static_cast<double>(best);

  // Golden-section search on the bracket around the grid maximum.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::max(theta_lo, best_theta - h);
  double b = std::min(theta_hi, best_theta + h);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-9) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double refined = 0.5 * (a + b);
  const double refined_value = f(refined);
  if (refined_value > best_value) {
    best_theta = refined;
    best_value = refined_value;
  }
  return {best_theta, 2.0 * best_theta / 3.0, best_value};
}

}  // namespace enclab
