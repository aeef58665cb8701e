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

#include <numbers>
#include <random>
#include <thread>

#include <catch2/catch_amalgamated.hpp>

#include "enclab/quantum.hpp"
#include "support/oracles.hpp"

using namespace enclab;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace {

StateVector basis_combination(const std::vector<std::pair<int, Complex>>& amplitudes, int qubits = 3) {
  StateVector psi = StateVector::Zero(1 << qubits);
  for (const auto& [index, a] : amplitudes) psi(index) = a;
  return psi;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

void check_invariants(const DensityOperator& rho) {
  const auto& m = rho.matrix();
  CHECK(max_abs_diff(m, m.adjoint()) <= 1e-10);
  CHECK_THAT(m.trace().real(), WithinAbs(1.0, 1e-10));
  CHECK(rho.eigenvalues().minCoeff() >= -1e-10);
}

double h_k1(const DensityOperator& rho, double theta) {
  BornModel model(rho, default_observables(theta));
  return evaluate(entropic_chsh("A0", "A1", "B0", "B1", ChshForm::Sec2b), model);
}

double h_k2(const DensityOperator& rho, double theta) {
  BornModel model(rho, default_observables(theta));
  return evaluate(entropic_chsh("A0", "A1", "E0", "E1", ChshForm::Sec2b), model);
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST_CASE("DensityOperator validation", "[quantum]") {
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix::Identity(3, 3) / 3.0), QuantumError);
  CHECK_THROWS_AS(DensityOperator(ComplexMatrix::Identity(2, 2)), QuantumError);
  ComplexMatrix non_hermitian = ComplexMatrix::Identity(2, 2) / 2.0;
  non_hermitian(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityOperator(non_hermitian), QuantumError);
  ComplexMatrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityOperator(negative), QuantumError);
  CHECK_THROWS_AS(DensityOperator::maximally_mixed(7), QuantumError);
  check_invariants(DensityOperator::maximally_mixed(3));
}

TEST_CASE("pure and mixed families", "[quantum]") {
  const auto psi1 = basis_combination({{0b001, kInvSqrt2}, {0b111, kInvSqrt2}});
  const auto psi2 = basis_combination({{0b010, kInvSqrt2}, {0b111, kInvSqrt2}});
  CHECK(max_abs_diff(pure_family(1, 0).matrix(), psi1 * psi1.adjoint()) <= 1e-12);
  CHECK(max_abs_diff(pure_family(0, 1).matrix(), psi2 * psi2.adjoint()) <= 1e-12);
  const double n = 1.0 / std::sqrt(1.5);
  const auto half = basis_combination({{0b001, 0.5 * n}, {0b010, 0.5 * n}, {0b111, n}});
  CHECK(max_abs_diff(pure_family(0.5, 0.5).matrix(), half * half.adjoint()) <= 1e-12);
  CHECK_THROWS_AS(pure_family(0, 0), QuantumError);
  CHECK_THROWS_AS(pure_family(-1, 0), QuantumError);

  CHECK(max_abs_diff(mixed_family(1).matrix(), pure_family(1, 0).matrix()) <= 1e-12);
  CHECK(max_abs_diff(mixed_family(0).matrix(), pure_family(0, 1).matrix()) <= 1e-12);
  CHECK_THROWS_AS(mixed_family(1.5), QuantumError);
  CHECK_THROWS_AS(mixed_family(-0.1), QuantumError);

  // Gram-matrix oracle: eigenvalues (1 +- |<psi1|psi2>|)/2 with overlap 1/2.
  auto ev = mixed_family(0.5).eigenvalues();
  std::vector<double> sorted(ev.data(), ev.data() + ev.size());
  std::sort(sorted.begin(), sorted.end());
  CHECK_THAT(sorted[7], WithinAbs(0.75, 1e-12));
  CHECK_THAT(sorted[6], WithinAbs(0.25, 1e-12));
  for (int i = 0; i < 6; ++i) CHECK_THAT(sorted[i], WithinAbs(0.0, 1e-12));

  for (double p1 = 0; p1 <= 1.0; p1 += 0.25) {
    for (double p2 = 0; p2 <= 1.0; p2 += 0.25) {
      if (p1 + p2 > 0) check_invariants(pure_family(p1, p2));
    }
    check_invariants(mixed_family(p1));
  }
}

TEST_CASE("xz observables", "[quantum]") {
  const auto z = xz_observable(0.0, 0).projector(+1);
  CHECK(std::abs(z(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(z(1, 1)) < 1e-15);

  const auto flip = xz_observable(std::numbers::pi, 0).projector(+1);
  CHECK(std::abs(flip(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(flip(0, 0)) < 1e-15);

  const auto a1 = xz_observable(0.6093, 0).projector(+1);
  // Diagonal (I + cos Z)/2 and off-diagonal sin/2: the readout coefficients.
  CHECK_THAT(a1(0, 0).real() - 0.5, WithinAbs(0.410, 0.0005));
  CHECK_THAT(a1(0, 1).real(), WithinAbs(0.286, 0.0005));

  CHECK_THAT(xz_observable(-0.5, 1).bloch_angle, WithinAbs(2 * std::numbers::pi - 0.5, 1e-15));
  CHECK_THAT(xz_observable(7.0, 1).bloch_angle, WithinAbs(7.0 - 2 * std::numbers::pi, 1e-15));

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(-10, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto o = xz_observable(angle(rng), 0);
    const auto plus = o.projector(+1);
    const auto minus = o.projector(-1);
    CHECK((plus * plus - plus).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((plus + minus - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((plus - testing::xz_projector(o.bloch_angle, +1)).cwiseAbs().maxCoeff() <= 1e-14);
  }
  CHECK_THROWS_AS(xz_observable(0.0, 0).projector(0), QuantumError);
}

TEST_CASE("observable placement", "[quantum]") {
  const auto obs = default_observables(0.457);
  CHECK(obs.size() == 6);
  CHECK_THAT(obs.at("A0").bloch_angle, WithinAbs(0.0, 1e-15));
  CHECK_THAT(obs.at("B1").bloch_angle, WithinAbs(0.3047, 1e-4));
  CHECK_THAT(obs.at("A1").bloch_angle, WithinAbs(0.6093, 1e-4));
  CHECK_THAT(obs.at("B0").bloch_angle, WithinAbs(0.9140, 1e-4));
  CHECK(obs.at("A0").site == 0);
  CHECK(obs.at("A1").site == 0);
  CHECK(obs.at("B0").site == 1);
  CHECK(obs.at("B1").site == 1);
  CHECK(obs.at("E0").site == 2);
  CHECK(obs.at("E1").site == 2);
  CHECK(obs.at("E0").bloch_angle == obs.at("B0").bloch_angle);
  CHECK(obs.at("E1").bloch_angle == obs.at("B1").bloch_angle);

  for (const auto& [label, spec] : default_observables(0.0)) CHECK(spec.bloch_angle == 0.0);

  const auto eq4 = observables_for_form(0.457, ChshForm::Eq4);
  CHECK(eq4.at("A0").bloch_angle == obs.at("A1").bloch_angle);
  CHECK(eq4.at("B0").bloch_angle == obs.at("B1").bloch_angle);
  CHECK(eq4.at("E1").bloch_angle == obs.at("E0").bloch_angle);
}

TEST_CASE("joint distributions against closed forms", "[quantum]") {
  const auto bell = bell_with_spectator();
  for (double delta : {0.0, 0.3, 1.1, std::numbers::pi / 2, 2.5}) {
    const auto j = joint_distribution(bell, xz_observable(0.2, 0), xz_observable(0.2 + delta, 1));
    const double agree = j.probabilities()[0] + j.probabilities()[3];
    CHECK_THAT(agree, WithinAbs(0.5 * (1 + std::cos(delta)), 1e-12));
    CHECK_THAT(conditional_entropy(j), WithinAbs(testing::bell_conditional_entropy(delta), 1e-10));
  }
  const auto same = joint_distribution(bell, xz_observable(0.4, 0), xz_observable(0.4, 1));
  CHECK_THAT(same.probabilities()[0], WithinAbs(0.5, 1e-12));
  CHECK_THAT(same.probabilities()[1], WithinAbs(0.0, 1e-12));

  // Site 2 carries |1>, independent of site 0.
  const auto obs = default_observables(0.457);
  const auto j = joint_distribution(bell, obs.at("A1"), obs.at("E0"));
  const auto ma = single_distribution(bell, obs.at("A1"));
  const auto me = single_distribution(bell, obs.at("E0"));
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t e = 0; e < 2; ++e) {
      const std::array<std::size_t, 2> idx{a, e};
      CHECK_THAT(j.at(idx), WithinAbs(ma.probabilities()[a] * me.probabilities()[e], 1e-12));
    }
  }
  CHECK_THROWS_AS(joint_distribution(bell, obs.at("A0"), obs.at("A1")), QuantumError);
  CHECK_THROWS_AS(joint_distribution(bell, obs.at("A0"), xz_observable(0, 5)), QuantumError);
}

TEST_CASE("joint distributions match the index-arithmetic oracle", "[quantum][property]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> angle(0, 2 * std::numbers::pi);
  std::uniform_int_distribution<std::size_t> site(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = trial % 3 == 0 ? mixed_family(angle(rng) / (2 * std::numbers::pi))
                                    : haar_random_state(3, rng);
    const std::size_t s1 = site(rng);
    std::size_t s2 = site(rng);
    if (s2 == s1) s2 = (s1 + 1) % 3;
    const auto o1 = xz_observable(angle(rng), s1);
    const auto o2 = xz_observable(angle(rng), s2);
    const auto j = joint_distribution(rho, o1, o2);
    const int outcomes[2] = {+1, -1};
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        const double expected =
            testing::born_probability(rho.matrix(), 3, s1, testing::xz_projector(o1.bloch_angle, outcomes[a]),
                                      s2, testing::xz_projector(o2.bloch_angle, outcomes[b]));
        const std::array<std::size_t, 2> idx{a, b};
        CHECK_THAT(j.at(idx), WithinAbs(expected, 1e-12));
      }
    }
    // Marginals agree with the single-observable distribution.
    const auto m1 = j.marginal({0});
    const auto single = single_distribution(rho, o1);
    CHECK_THAT(m1.probabilities()[0], WithinAbs(single.probabilities()[0], 1e-12));
  }
}

TEST_CASE("BornModel", "[quantum]") {
  const auto bell = bell_with_spectator();
  CHECK_THAT(h_k1(bell, 0.457), WithinAbs(0.237, 0.001));

  BornModel mixed(DensityOperator::maximally_mixed(3), default_observables(0.457));
  for (const auto& x : tripartite_labels()) {
    for (const auto& y : tripartite_labels()) {
      if (default_observables(0.457).at(x).site == default_observables(0.457).at(y).site) continue;
      CHECK_THAT(evaluate(EntropicExpression{}.add_term(x, y, 1), mixed), WithinAbs(1.0, 1e-12));
    }
  }

  std::mt19937_64 rng(4);
  const auto rho = haar_random_state(3, rng);
  BornModel model(rho, default_observables(0.457));
  const auto with_b = model.joint("A0", "B0").marginal({0});
  const auto with_e = model.joint("A0", "E1").marginal({0});
  CHECK_THAT(with_b.probabilities()[0], WithinAbs(with_e.probabilities()[0], 1e-12));
  // Transposed query is consistent with the cached forward query.
  const auto fwd = model.joint("A0", "B0");
  const auto rev = model.joint("B0", "A0");
  const std::array<std::size_t, 2> i01{0, 1};
  const std::array<std::size_t, 2> i10{1, 0};
  CHECK(fwd.at(i01) == rev.at(i10));

  try {
    (void)model.joint("A0", "A1");
    FAIL("expected QuantumError");
  } catch (const QuantumError& e) {
    CHECK_THAT(std::string(e.what()), ContainsSubstring("A0") && ContainsSubstring("A1"));
  }
  CHECK_THROWS_AS(model.joint("A0", "Q9"), ModelError);
}

TEST_CASE("fidelity", "[quantum]") {
  const auto psi1 = pure_family(1, 0);
  CHECK_THAT(fidelity(psi1, psi1), WithinAbs(1.0, 1e-10));
  const auto zero = DensityOperator::from_pure(basis_combination({{0, 1.0}}, 1));
  const auto one = DensityOperator::from_pure(basis_combination({{1, 1.0}}, 1));
  CHECK_THAT(fidelity(zero, one), WithinAbs(0.0, 1e-10));
  CHECK_THAT(fidelity(psi1, mixed_family(0.5)), WithinAbs(0.625, 1e-10));
  CHECK_THROWS_AS(fidelity(zero, psi1), QuantumError);

  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = haar_random_state(2, rng);
    const auto b = haar_random_state(2, rng);
    const auto mixed_a = DensityOperator::mix(0.3, a, DensityOperator::maximally_mixed(2));
    const auto mixed_b = DensityOperator::mix(0.6, b, haar_random_state(2, rng));
    CHECK_THAT(fidelity(mixed_a, mixed_b), WithinAbs(fidelity(mixed_b, mixed_a), 1e-10));
    // Pure pairs reduce to |<psi|phi>|^2 = tr(rho sigma).
    const double overlap = (a.matrix() * b.matrix()).trace().real();
    CHECK_THAT(fidelity(a, b), WithinAbs(overlap, 1e-10));
    const double f = fidelity(mixed_a, mixed_b);
    CHECK(f >= -1e-12);
    CHECK(f <= 1 + 1e-12);
  }
}

TEST_CASE("depolarize", "[quantum]") {
  const auto psi1 = pure_family(1, 0);
  CHECK(max_abs_diff(depolarize(psi1, 0).matrix(), psi1.matrix()) <= 1e-15);
  CHECK(max_abs_diff(depolarize(psi1, 1).matrix(), DensityOperator::maximally_mixed(3).matrix()) <=
        1e-15);
  CHECK_THAT(fidelity(depolarize(psi1, 0.1), psi1), WithinAbs(0.9125, 1e-10));
  CHECK_THROWS_AS(depolarize(psi1, -0.1), QuantumError);
  CHECK_THROWS_AS(depolarize(psi1, 1.1), QuantumError);
}

TEST_CASE("Haar-random states", "[quantum]") {
  std::mt19937_64 a(9);
  std::mt19937_64 b(9);
  const auto r1 = haar_random_state(3, a);
  const auto r2 = haar_random_state(3, b);
  CHECK(max_abs_diff(r1.matrix(), r2.matrix()) == 0.0);
  check_invariants(r1);
  // Purity of a pure state.
  CHECK_THAT((r1.matrix() * r1.matrix()).trace().real(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("maximize_violation", "[quantum]") {
  const auto bell = bell_with_spectator();
  const auto best = maximize_violation(bell, ChshForm::Sec2b, 0.05, 1.5, 200);
  CHECK_THAT(best.value, WithinAbs(0.2370, 0.0005));
  CHECK_THAT(best.theta, WithinAbs(0.457, 0.008));
  CHECK_THAT(best.bloch_step, WithinAbs(2 * best.theta / 3, 1e-15));
  // Frozen from a 1e-4 resolution brute-force grid over theta.
  CHECK_THAT(best.value, WithinAbs(0.2368825999, 1e-7));
  CHECK_THAT(best.theta, WithinAbs(0.4570, 1e-3));
  double grid_best = -1e9;
  for (double theta = 0.40; theta <= 0.52; theta += 0.002) grid_best = std::max(grid_best, h_k1(bell, theta));
  CHECK(best.value >= grid_best - 1e-12);

  const auto product = DensityOperator::from_pure(basis_combination({{0, 1.0}}));
  CHECK(maximize_violation(product, ChshForm::Sec2b, 0.05, 1.5, 100).value <= 0.0);

  const auto flat = DensityOperator::maximally_mixed(3);
  for (double theta : {0.1, 0.457, 1.2}) CHECK_THAT(h_k1(flat, theta), WithinAbs(-2.0, 1e-12));
  CHECK_THAT(maximize_violation(flat, ChshForm::Sec2b, 0.05, 1.5, 50).value, WithinAbs(-2.0, 1e-12));
  CHECK_THAT(maximize_violation(flat, ChshForm::Sec2b, 0.05, 1.5, 50).theta, WithinAbs(0.05, 1e-9));

  CHECK_THAT(chsh_violation(bell, 0.457, ChshForm::Eq4),
             WithinAbs(chsh_violation(bell, 0.457, ChshForm::Sec2b), 1e-12));
  CHECK_THROWS(maximize_violation(bell, ChshForm::Sec2b, 0.05, 1.5, 2));
  CHECK_THROWS(maximize_violation(bell, ChshForm::Sec2b, 1.5, 0.05, 10));
}

TEST_CASE("family symmetry on a 21x21 grid", "[quantum][property]") {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      if (i == 0 && j == 0) continue;
      const double p1 = i / 20.0;
      const double p2 = j / 20.0;
      CHECK_THAT(h_k1(pure_family(p1, p2), 0.457), WithinAbs(h_k2(pure_family(p2, p1), 0.457), 1e-12));
    }
  }
}

TEST_CASE("Haar-random states respect the bounds", "[quantum][property]") {
  std::mt19937_64 rng(2718);
  double worst_k1 = -1e9;
  double worst_sum = -1e9;
  for (int trial = 0; trial < 500; ++trial) {
    const auto rho = haar_random_state(3, rng);
    BornModel model(rho, default_observables(0.457));
    const auto k1 = entropic_chsh("A0", "A1", "B0", "B1", ChshForm::Sec2b);
    const auto k2 = entropic_chsh("A0", "A1", "E0", "E1", ChshForm::Sec2b);
    worst_k1 = std::max(worst_k1, evaluate(k1, model));
    worst_sum = std::max(worst_sum, evaluate(k1 + k2, model));
  }
  CHECK(worst_k1 <= 0.237 + 0.002);
  CHECK(worst_sum <= 1e-9);
}

TEST_CASE("mixing helpers", "[quantum]") {
  const auto a = pure_family(1, 0);
  const auto b = pure_family(0, 1);
  CHECK(max_abs_diff(DensityOperator::mix(0.3, a, b).matrix(), mixed_family(0.3).matrix()) <= 1e-15);
  CHECK_THROWS_AS(DensityOperator::mix(0.5, a, DensityOperator::maximally_mixed(2)), QuantumError);
  const auto emb = embed(2, {{0, Eigen::Matrix2cd::Identity()}});
  CHECK(max_abs_diff(emb, ComplexMatrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("BornModel answers concurrent queries consistently", "[quantum][concurrency]") {
  std::mt19937_64 rng(12);
  const BornModel model(haar_random_state(3, rng), default_observables(0.457));
  const auto k1k2 = entropic_chsh("A0", "A1", "B0", "B1", ChshForm::Sec2b) +
                    entropic_chsh("A0", "A1", "E0", "E1", ChshForm::Sec2b);
  std::vector<double> results(8);
  {
    std::vector<std::jthread> workers;
    for (std::size_t i = 0; i < results.size(); ++i) {
      workers.emplace_back([&, i] {
        for (int rep = 0; rep < 20; ++rep) results[i] = evaluate(k1k2, model);
      });
    }
  }
  BornModel fresh(model.state(), model.placement());
  for (double r : results) CHECK(r == evaluate(k1k2, fresh));
}
