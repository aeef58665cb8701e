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

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "enclab/entropy.hpp"
#include "enclab/graph.hpp"
#include "enclab/monogamy.hpp"
#include "enclab/quantum.hpp"

namespace enclab {

/// Malformed or schema-violating JSON input.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& message) : std::runtime_error(message) {}
};

// {"vertices":["A0",...],"edges":[["A0","B0"],...]}
nlohmann::json graph_to_json(const CommutationGraph& g);
CommutationGraph graph_from_json(const nlohmann::json& j);

// {"terms":[{"coeff":"-1","x":"A0","y":"B1"},...]}
nlohmann::json expression_to_json(const EntropicExpression& e);
EntropicExpression expression_from_json(const nlohmann::json& j);

/// Accepts a single inequality object, an array of them, or
/// {"targets":[...]}.
std::vector<EntropicExpression> targets_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const MonogamyCertificate& cert);

// {"amplitudes":[[re,im],...]}
StateVector state_from_json(const nlohmann::json& j);

}  // namespace enclab
