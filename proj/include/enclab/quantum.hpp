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

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "enclab/entropy.hpp"

namespace enclab {

class QuantumError : public std::invalid_argument {
 public:
  explicit QuantumError(const std::string& message)
      : std::invalid_argument(message) {}
};

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Eigenvalues within this distance of zero are treated as zero.
inline constexpr double kEigenTolerance = 1e-10;
inline constexpr std::size_t kMaxQubits = 6;

/// Trace-one positive semidefinite operator on n <= 6 qubits. Qubit 0 is
/// the most significant tensor factor (|q0 q1 q2>).
class DensityOperator {
 public:
  /// Validates Hermiticity, unit trace and positivity (tolerance 1e-10).
  explicit DensityOperator(ComplexMatrix matrix);

  /// |psi><psi| of the normalized vector.
  static DensityOperator from_pure(const StateVector& psi);
  static DensityOperator maximally_mixed(std::size_t qubits);

  std::size_t qubits() const { return qubits_; }
  Eigen::Index dimension() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Eigen::VectorXd eigenvalues() const;

  /// p*a + (1-p)*b.
  static DensityOperator mix(double p, const DensityOperator& a,
                             const DensityOperator& b);

 private:
  ComplexMatrix matrix_;
  std::size_t qubits_ = 0;
};

/// +-1 valued qubit observable cos(a) Z + sin(a) X on one site; the angle is
/// the polar Bloch angle of the +1 eigenvector, stored in [0, 2*pi).
struct ObservableSpec {
  double bloch_angle = 0.0;
  std::size_t site = 0;

  /// Single-qubit projector (I + s (cos a Z + sin a X)) / 2 for outcome s.
  Eigen::Matrix2cd projector(int outcome) const;
};

ObservableSpec xz_observable(double alpha, std::size_t site);

/// Embeds single-site operators into the full register (identity elsewhere).
ComplexMatrix embed(std::size_t qubits,
                    const std::map<std::size_t, Eigen::Matrix2cd>& factors);

/// N (p1|001> + p2|010> + (p1+p2)|111>).
DensityOperator pure_family(double p1, double p2);

/// p |psi1><psi1| + (1-p) |psi2><psi2| with psi1 = (|001>+|111>)/sqrt2,
/// psi2 = (|010>+|111>)/sqrt2.
DensityOperator mixed_family(double p);

/// (|00>+|11>)/sqrt2 on qubits 0,1 with qubit 2 in |1>.
DensityOperator bell_with_spectator();

/**
 * The six observables of the tripartite CHSH experiment at angle parameter
 * theta: Alice on qubit 0, Bob on qubit 1, Charlie on qubit 2. Bloch angles
 * A0 = 0, B1 = 2θ/3, A1 = 4θ/3, B0 = 2θ; Charlie copies Bob. The printed
 * 2x2 matrices are basis rotations by θ/3 steps, which doubles on the Bloch
 * sphere.
 */
std::map<std::string, ObservableSpec> default_observables(double theta);

/**
 * Placement matched to a CHSH term ordering. SEC2B uses default_observables;
 * EQ4 is SEC2B under A0<->A1, B0<->B1, so the same relabeling is applied to
 * the placement (and E0<->E1 for Charlie). Both orderings then give
 * identical values on every state.
 */
std::map<std::string, ObservableSpec> observables_for_form(double theta, ChshForm form);

/// Labels of the default placement, in fixed order.
inline const std::vector<std::string>& tripartite_labels() {
  static const std::vector<std::string> labels{"A0", "A1", "B0", "B1", "E0", "E1"};
  return labels;
}

/// Born-rule 2x2 table over (+1,-1) x (+1,-1) for observables on distinct
/// sites.
JointDistribution joint_distribution(const DensityOperator& rho,
                                     const ObservableSpec& o1,
                                     const ObservableSpec& o2);

/// Outcome distribution of a single observable.
JointDistribution single_distribution(const DensityOperator& rho,
                                      const ObservableSpec& o);

/// Probability model answering cross-site pairs by the Born rule. Results
/// are cached; concurrent queries are safe.
class BornModel : public ProbabilityModel {
 public:
  BornModel(DensityOperator rho, std::map<std::string, ObservableSpec> placement);

  JointDistribution joint(const std::string& x,
                          const std::string& y) const override;

  const DensityOperator& state() const { return rho_; }
  const std::map<std::string, ObservableSpec>& placement() const { return placement_; }

 private:
  DensityOperator rho_;
  std::map<std::string, ObservableSpec> placement_;
  mutable std::mutex mutex_;
  mutable std::map<EntropyTerm, JointDistribution> cache_;
};

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

/// (1 - lambda) rho + lambda I/d.
DensityOperator depolarize(const DensityOperator& rho, double lambda);

/// Haar-random pure state via normalized complex Gaussian amplitudes.
DensityOperator haar_random_state(std::size_t qubits, std::mt19937_64& rng);

struct ViolationOptimum {
  /// Angle parameter of the default placement.
  double theta = 0.0;
  /// Bloch separation between successive observables, 2θ/3.
  double bloch_step = 0.0;
  double value = 0.0;
};

/// H_K1 (Alice-Bob CHSH in `form`) on observables_for_form(theta, form).
double chsh_violation(const DensityOperator& rho, double theta, ChshForm form);

/**
 * Grid search of chsh_violation over [theta_lo, theta_hi] followed by
 * golden-section refinement around the best grid point. Ties go to the
 * smaller angle.
 */
ViolationOptimum maximize_violation(const DensityOperator& rho, ChshForm form,
                                    double theta_lo, double theta_hi,
                                    std::size_t grid_points);

}  // namespace enclab
