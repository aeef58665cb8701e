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
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "enclab/entropy.hpp"
#include "enclab/quantum.hpp"

namespace enclab {

inline constexpr std::string_view kVersion = "0.1.0";

struct RunConfig {
  double theta = 0.457;
  ChshForm form = ChshForm::Sec2b;
  std::size_t grid_points = 200;
  double theta_lo = 0.05;
  double theta_hi = 1.5;
  /// Empty means stdout.
  std::string output_path;
  double noise_lambda = 0.0;
  std::uint64_t seed = 0;
};

/// "# enc-lab <version> command=... theta=... form=... noise=... seed=..."
std::string metadata_header(const RunConfig& config, std::string_view command);

/// Formats with 6 significant digits, dot decimal.
std::string format_number(double v);

struct MonogamyValues {
  double hk1 = 0.0;
  double hk2 = 0.0;
  double sum = 0.0;
};

/// Alice-Bob (hk1) and Alice-Charlie (hk2) CHSH values and their sum for
/// `rho` measured with `observables`.
MonogamyValues monogamy_values(const DensityOperator& rho,
                               const std::map<std::string, ObservableSpec>& observables,
                               ChshForm form);

/// Placement with Charlie's E1 at Bloch angle 4θ/3 instead of 2θ/3; the
/// only placement found to give the published H_K2 at (p1,p2) = (1,0).
std::map<std::string, ObservableSpec> charlie_alternative_observables(double theta,
                                                                     ChshForm form = ChshForm::Sec2b);

struct SweepRow {
  double p = 0.0;
  MonogamyValues values;
};

/// 101 points p = 0.00..1.00 over the (depolarized) mixed family.
std::vector<SweepRow> sweep_mixed(const RunConfig& config);
void write_sweep_csv(std::ostream& out, const RunConfig& config,
                     const std::vector<SweepRow>& rows);

struct PublishedPureRow {
  double p1, p2;
  double hk1, hk2, sum;
};

/// Theory columns of the published pure-state table.
const std::vector<PublishedPureRow>& published_pure_table();

struct PureTableRow {
  double p1 = 0.0;
  double p2 = 0.0;
  MonogamyValues model;
  /// hk2 with charlie_alternative_observables.
  double hk2_alternative = 0.0;
  PublishedPureRow published;
};

std::vector<PureTableRow> table_pure(const RunConfig& config);
void write_pure_table_csv(std::ostream& out, const RunConfig& config,
                          const std::vector<PureTableRow>& rows);

/// Maximizes H_K1 over theta for the Bell pair with a spectator qubit.
ViolationOptimum optimize(const RunConfig& config);
nlohmann::json optimum_to_json(const RunConfig& config, const ViolationOptimum& opt);

}  // namespace enclab
