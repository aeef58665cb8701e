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

#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "enclab/experiments.hpp"
#include "enclab/json_io.hpp"
#include "enclab/monogamy.hpp"

using namespace enclab;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::StartsWith;
using Catch::Matchers::WithinAbs;

namespace {

std::string body_of(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (!line.starts_with("#")) out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("graph and expression JSON round trip", "[json]") {
  const auto ex = chsh_tripartite_example();
  CHECK(graph_from_json(graph_to_json(ex.joint)) == ex.joint);
  for (const auto& t : ex.targets) CHECK(expression_from_json(expression_to_json(t)) == t);

  EntropicExpression e;
  e.add_term("X", "Y", Rational(-2, 3));
  CHECK(expression_to_json(e).dump().find("\"-2/3\"") != std::string::npos);
  CHECK(expression_from_json(expression_to_json(e)) == e);

  const auto integer = nlohmann::json::parse(R"({"terms":[{"x":"X","y":"Y","coeff":2}]})");
  CHECK(expression_from_json(integer).coefficient("X", "Y") == 2);
}

TEST_CASE("targets JSON accepts several layouts", "[json]") {
  const auto one = nlohmann::json::parse(R"({"terms":[{"x":"A","y":"B","coeff":"1"}]})");
  CHECK(targets_from_json(one).size() == 1);
  CHECK(targets_from_json(nlohmann::json::array({one, one})).size() == 2);
  CHECK(targets_from_json(nlohmann::json{{"targets", {one}}}).size() == 1);
}

TEST_CASE("malformed JSON is rejected", "[json]") {
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"vertices":"A"})")), FormatError);
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"vertices":["A","B"],"edges":[["A"]]})")),
                  FormatError);
  CHECK_THROWS(graph_from_json(nlohmann::json::parse(R"({"vertices":["A"],"edges":[["A","Z"]]})")));
  CHECK_THROWS_AS(expression_from_json(nlohmann::json::parse(R"({"terms":[{"x":"A","y":"B","coeff":"q"}]})")),
                  FormatError);
  CHECK_THROWS_AS(state_from_json(nlohmann::json::parse(R"({"amplitudes":[[1,0],[0,0],[0,0]]})")),
                  FormatError);
}

TEST_CASE("state JSON", "[json]") {
  const auto psi = state_from_json(nlohmann::json::parse(R"({"amplitudes":[[1,0],[0,1]]})"));
  REQUIRE(psi.size() == 2);
  CHECK(psi(1) == Complex(0, 1));
}

TEST_CASE("certificate JSON", "[json]") {
  const auto j = certificate_to_json(chsh_tripartite_example().certificate);
  CHECK(j.at("verified").get<bool>());
  CHECK(j.at("triangles").size() == 4);
  CHECK(j.at("decomposition").at("subgraphs").size() == 2);
  CHECK(j.at("triangles")[0].at("multiplier").get<std::string>() == "1");
  CHECK(j.at("target_text").get<std::string>() ==
        (entropic_chsh("A0", "A1", "B0", "B1", ChshForm::Sec2b) +
         entropic_chsh("A0", "A1", "E0", "E1", ChshForm::Sec2b))
            .to_string());
}

TEST_CASE("metadata header", "[experiments]") {
  RunConfig config;
  config.noise_lambda = 0.05;
  config.seed = 17;
  const auto header = metadata_header(config, "sweep-mixed");
  CHECK_THAT(header, StartsWith("# enc-lab "));
  for (const char* field : {"command=sweep-mixed", "theta=0.457", "form=SEC2B", "noise=0.05", "seed=17"}) {
    CHECK_THAT(header, ContainsSubstring(field));
  }
  CHECK_THAT(header, ContainsSubstring(std::string(kVersion)));
}

TEST_CASE("mixed sweep", "[experiments]") {
  const RunConfig config;
  const auto rows = sweep_mixed(config);
  REQUIRE(rows.size() == 101);
  CHECK_THAT(rows.front().p, WithinAbs(0.0, 1e-15));
  CHECK_THAT(rows.back().p, WithinAbs(1.0, 1e-15));
  CHECK_THAT(rows.back().values.hk1, WithinAbs(0.237, 0.001));
  CHECK_THAT(rows.front().values.hk2, WithinAbs(0.237, 0.001));
  for (const auto& r : rows) {
    CHECK(r.values.sum <= 1e-9);
    CHECK_THAT(r.values.sum, WithinAbs(r.values.hk1 + r.values.hk2, 1e-12));
  }
  // Violations are confined to the ends of the sweep.
  for (const auto& r : rows) {
    if (r.values.hk1 > 0) CHECK(r.p > 0.5);
    if (r.values.hk2 > 0) CHECK(r.p < 0.5);
  }

  std::ostringstream a;
  std::ostringstream b;
  write_sweep_csv(a, config, rows);
  write_sweep_csv(b, config, sweep_mixed(config));
  CHECK(a.str() == b.str());
  CHECK_THAT(body_of(a.str()), StartsWith("p,H_K1,H_K2,sum\n"));
}

TEST_CASE("pure table", "[experiments]") {
  const RunConfig config;
  const auto rows = table_pure(config);
  REQUIRE(rows.size() == 5);
  CHECK(rows.front().p1 == 1.0);
  CHECK(rows.front().p2 == 0.0);
  CHECK_THAT(rows.front().model.hk1, WithinAbs(0.236, 0.002));
  CHECK_THAT(rows.back().model.hk2, WithinAbs(0.236, 0.002));
  CHECK_THAT(rows.front().hk2_alternative, WithinAbs(-1.436, 0.002));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].model.sum <= 0.0);
    const auto& mirror = rows[rows.size() - 1 - i];
    CHECK(mirror.p1 == rows[i].p2);
    CHECK_THAT(rows[i].model.hk1, WithinAbs(mirror.model.hk2, 1e-12));
  }
  CHECK_THAT(rows[2].model.hk1, WithinAbs(rows[2].model.hk2, 1e-12));
  CHECK(rows[2].model.hk1 < 0.0);

  std::ostringstream csv;
  write_pure_table_csv(csv, config, rows);
  CHECK_THAT(body_of(csv.str()), StartsWith("p1,p2,H_K1,H_K2,sum,H_K2_alt,published_H_K1"));
}

TEST_CASE("optimize", "[experiments]") {
  RunConfig config;
  const auto sec2b = optimize(config);
  CHECK_THAT(sec2b.value, WithinAbs(0.2370, 0.0005));
  CHECK_THAT(sec2b.theta, WithinAbs(0.457, 0.008));
  config.form = ChshForm::Eq4;
  const auto eq4 = optimize(config);
  CHECK_THAT(eq4.value, WithinAbs(sec2b.value, 1e-9));

  const auto j = optimum_to_json(config, eq4);
  CHECK(j.contains("thetaStar"));
  CHECK(j.contains("blochStep"));
  CHECK(j.contains("value"));
  CHECK(j.at("metadata").at("form").get<std::string>() == "EQ4");
}

TEST_CASE("noise lowers the violation", "[experiments]") {
  RunConfig config;
  const double clean = sweep_mixed(config).back().values.hk1;
  for (double lambda : {0.05, 0.1}) {
    config.noise_lambda = lambda;
    const double noisy = sweep_mixed(config).back().values.hk1;
    CHECK(noisy < clean);
    CHECK(table_pure(config).front().model.hk1 < clean);
    CHECK(optimize(config).value < clean);
  }
}
