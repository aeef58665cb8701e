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

#include "enclab/json_io.hpp"

namespace enclab {

using nlohmann::json;

json graph_to_json(const CommutationGraph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"vertices", g.vertices()}, {"edges", edges}};
}

CommutationGraph graph_from_json(const json& j) {
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("edge must be a two-element array");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return CommutationGraph(j.at("vertices").get<std::vector<std::string>>(), edges);
  } catch (const json::exception& e) {
    throw FormatError(std::string("graph JSON: ") + e.what());
  } catch (const GraphError& e) {
    throw FormatError(std::string("graph JSON: ") + e.what());
  }
}

json expression_to_json(const EntropicExpression& e) {
  json terms = json::array();
  for (const auto& [term, c] : e.terms()) {
    terms.push_back({{"coeff", to_string(c)}, {"x", term.first}, {"y", term.second}});
  }
  return {{"terms", terms}};
}

EntropicExpression expression_from_json(const json& j) {
  try {
    EntropicExpression e;
    for (const auto& t : j.at("terms")) {
      const auto& c = t.at("coeff");
      const Rational q = c.is_string() ? parse_rational(c.get<std::string>())
                                       : Rational(c.get<long long>());
      e.add_term(t.at("x").get<std::string>(), t.at("y").get<std::string>(), q);
    }
    return e;
  } catch (const json::exception& e) {
    throw FormatError(std::string("inequality JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("inequality JSON: ") + e.what());
  }
}

std::vector<EntropicExpression> targets_from_json(const json& j) {
  const json* list = &j;
  if (j.is_object() && j.contains("targets")) list = &j.at("targets");
  std::vector<EntropicExpression> out;
  if (list->is_array()) {
    for (const auto& t : *list) out.push_back(expression_from_json(t));
  } else {
    out.push_back(expression_from_json(*list));
  }
  if (out.empty()) throw FormatError("no target inequalities given");
  return out;
}

json certificate_to_json(const MonogamyCertificate& cert) {
  json triangles = json::array();
  for (const auto& t : cert.triangles) {
    triangles.push_back({{"cycle", t.cycle},
                         {"multiplier", to_string(t.multiplier)},
                         {"inequality", expression_to_json(t.inequality())}});
  }
  json subgraphs = json::array();
  for (const auto& g : cert.decomposition.subgraphs) subgraphs.push_back(graph_to_json(g));
  const VerifyResult v = verify(cert);
  return {{"joint", graph_to_json(cert.joint)},
          {"triangles", triangles},
          {"decomposition", {{"subgraphs", subgraphs}}},
          {"target", expression_to_json(cert.target)},
          {"target_text", cert.target.to_string()},
          {"verified", v.ok}};
}

StateVector state_from_json(const json& j) {
  try {
    const auto& amps = j.at("amplitudes");
    if (!amps.is_array() || amps.size() < 2 || (amps.size() & (amps.size() - 1)) != 0) {
      throw FormatError("amplitudes must be an array whose length is a power of two");
    }
    StateVector psi(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const auto& a = amps[i];
      if (a.is_number()) {
        psi(static_cast<Eigen::Index>(i)) = a.get<double>();
      } else if (a.is_array() && a.size() == 2) {
        psi(static_cast<Eigen::Index>(i)) = Complex(a[0].get<double>(), a[1].get<double>());
      } else {
        throw FormatError("amplitude must be a number or [re, im]");
      }
    }
    return psi;
  } catch (const json::exception& e) {
    throw FormatError(std::string("state JSON: ") + e.what());
  }
}

}  // namespace enclab
