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

#include "enclab/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <thread>

namespace enclab {

namespace {

// Evaluates fn(i) for i in [0, n) across worker threads; results land in
// index order.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn fn) {
  std::vector<T> out(n);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(n, 1));
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = fn(i);
    });
  }
  pool.clear();
  return out;
}

DensityOperator with_noise(const DensityOperator& rho, const RunConfig& config) {
  return config.noise_lambda > 0.0 ? depolarize(rho, config.noise_lambda) : rho;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string metadata_header(const RunConfig& config, std::string_view command) {
  return "# enc-lab " + std::string(kVersion) + " command=" + std::string(command) +
         " theta=" + format_number(config.theta) + " form=" + to_string(config.form) +
         " noise=" + format_number(config.noise_lambda) + " seed=" + std::to_string(config.seed);
}

MonogamyValues monogamy_values(const DensityOperator& rho,
                               const std::map<std::string, ObservableSpec>& observables,
                               ChshForm form) {
  const BornModel model(rho, observables);
  MonogamyValues v;
  v.hk1 = evaluate(entropic_chsh("A0", "A1", "B0", "B1", form), model);
  v.hk2 = evaluate(entropic_chsh("A0", "A1", "E0", "E1", form), model);
  v.sum = v.hk1 + v.hk2;
  return v;
}

std::map<std::string, ObservableSpec> charlie_alternative_observables(double theta,
                                                                     ChshForm form) {
  auto obs = observables_for_form(theta, form);
  // E1 at 4θ/3; under EQ4 the relabeled counterpart is E0.
  obs[form == ChshForm::Eq4 ? "E0" : "E1"] = xz_observable(4.0 * theta / 3.0, 2);
  return obs;
}

std::vector<SweepRow> sweep_mixed(const RunConfig& config) {
  const auto observables = observables_for_form(config.theta, config.form);
  return parallel_map<SweepRow>(101, [&](std::size_t i) {
    const double p = static_cast<double>(i) / 100.0;
    return SweepRow{p, monogamy_values(with_noise(mixed_family(p), config), observables,
                                       config.form)};
  });
}

void write_sweep_csv(std::ostream& out, const RunConfig& config,
                     const std::vector<SweepRow>& rows) {
  out << metadata_header(config, "sweep-mixed") << '\n';
  out << "p,H_K1,H_K2,sum\n";
  for (const auto& r : rows) {
    char p[16];
    std::snprintf(p, sizeof p, "%.2f", r.p);
    out << p << ',' << format_number(r.values.hk1) << ',' << format_number(r.values.hk2) << ','
        << format_number(r.values.sum) << '\n';
  }
}

const std::vector<PublishedPureRow>& published_pure_table() {
  static const std::vector<PublishedPureRow> rows{
      {1.00, 0.00, 0.236, -1.436, -1.200},  {0.50, 0.25, -0.492, -1.338, -1.830},
      {0.50, 0.50, -1.017, -1.017, -2.034}, {0.25, 0.50, -1.338, -0.492, -1.830},
      {0.00, 1.00, -1.436, 0.236, -1.200},
  };
  return rows;
}

std::vector<PureTableRow> table_pure(const RunConfig& config) {
  const auto observables = observables_for_form(config.theta, config.form);
  const auto alternative = charlie_alternative_observables(config.theta, config.form);
  const auto& published = published_pure_table();
  return parallel_map<PureTableRow>(published.size(), [&](std::size_t i) {
    const auto& row = published[i];
    const DensityOperator rho = with_noise(pure_family(row.p1, row.p2), config);
    PureTableRow r;
    r.p1 = row.p1;
    r.p2 = row.p2;
    r.model = monogamy_values(rho, observables, config.form);
    r.hk2_alternative = monogamy_values(rho, alternative, config.form).hk2;
    r.published = row;
    return r;
  });
}

void write_pure_table_csv(std::ostream& out, const RunConfig& config,
                          const std::vector<PureTableRow>& rows) {
  out << metadata_header(config, "table-pure") << '\n';
  out << "p1,p2,H_K1,H_K2,sum,H_K2_alt,published_H_K1,published_H_K2,published_sum,"
         "dev_H_K1,dev_H_K2,dev_H_K2_alt,dev_sum\n";
  for (const auto& r : rows) {
    char p[32];
    std::snprintf(p, sizeof p, "%.2f,%.2f", r.p1, r.p2);
    out << p;
    for (double v : {r.model.hk1, r.model.hk2, r.model.sum, r.hk2_alternative, r.published.hk1,
                     r.published.hk2, r.published.sum, r.model.hk1 - r.published.hk1,
                     r.model.hk2 - r.published.hk2, r.hk2_alternative - r.published.hk2,
                     r.model.sum - r.published.sum}) {
      out << ',' << format_number(v);
    }
    out << '\n';
  }
}

ViolationOptimum optimize(const RunConfig& config) {
  return maximize_violation(with_noise(bell_with_spectator(), config), config.form,
                            config.theta_lo, config.theta_hi, config.grid_points);
}

nlohmann::json optimum_to_json(const RunConfig& config, const ViolationOptimum& opt) {
  return {{"metadata",
           {{"version", kVersion},
            {"command", "optimize"},
            {"theta", config.theta},
            {"form", to_string(config.form)},
            {"noise", config.noise_lambda},
            {"seed", config.seed},
            {"grid", config.grid_points},
            {"range", {config.theta_lo, config.theta_hi}}}},
          {"thetaStar", opt.theta},
          {"blochStep", opt.bloch_step},
          {"value", opt.value}};
}

}  // namespace enclab
