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

// enc-lab: command-line front end for the entropic monogamy experiments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "enclab/experiments.hpp"
#include "enclab/json_io.hpp"
#include "enclab/monogamy.hpp"
#include "enclab/pauli.hpp"

namespace {

using namespace enclab;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitSearchExhausted = 3;

class OutputSink {
 public:
  explicit OutputSink(const std::string& path) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool to_stdout() const { return !file_; }
  void close() {
    if (!file_) return;
    file_->close();
    if (file_->fail()) throw std::runtime_error("failed writing output file");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::size_t search_budget() {
  const char* env = std::getenv("ENC_LAB_BUDGET");
  if (env == nullptr || *env == '\0') return DeriveOptions::kDefaultBudget;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw FormatError(std::string("ENC_LAB_BUDGET is not a nonnegative integer: '") + env + "'");
  }
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("'" + path + "': " + e.what());
  }
}

int run_sweep(const RunConfig& config) {
  OutputSink sink(config.output_path);
  write_sweep_csv(sink.stream(), config, sweep_mixed(config));
  sink.close();
  return kExitOk;
}

int run_table(const RunConfig& config) {
  OutputSink sink(config.output_path);
  write_pure_table_csv(sink.stream(), config, table_pure(config));
  sink.close();
  return kExitOk;
}

int run_optimize(const RunConfig& config) {
  OutputSink sink(config.output_path);
  sink.stream() << optimum_to_json(config, optimize(config)).dump(2) << '\n';
  sink.close();
  return kExitOk;
}

int run_derive(const RunConfig& config, const std::string& example,
               const std::string& graph_path, const std::string& targets_path) {
  CommutationGraph joint;
  std::vector<EntropicExpression> targets;
  if (example == "chsh-tripartite") {
    auto ex = chsh_tripartite_example();
    joint = ex.joint;
    targets = ex.targets;
  } else if (example == "fig1") {
    const auto ex = chord_elimination_example();
    joint = ex.graph;
    targets = {ex.sum};
  } else if (!example.empty()) {
    throw FormatError("unknown example '" + example + "' (expected chsh-tripartite or fig1)");
  } else {
    if (graph_path.empty() || targets_path.empty()) {
      throw FormatError("derive needs --example or both --graph and --targets");
    }
    joint = graph_from_json(read_json(graph_path));
    targets = targets_from_json(read_json(targets_path));
  }

  DeriveOptions options;
  options.budget = search_budget();
  DeriveResult result;
  try {
    result = derive_monogamy(joint, targets, options);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  nlohmann::json out = {{"metadata",
                         {{"version", kVersion},
                          {"command", "derive"},
                          {"theta", config.theta},
                          {"form", to_string(config.form)},
                          {"noise", config.noise_lambda},
                          {"seed", config.seed},
                          {"budget", options.budget}}},
                        {"status", to_string(result.status)},
                        {"diagnostic", result.diagnostic()},
                        {"decompositionsExamined", result.decompositions_examined}};
  if (result.certificate) out["certificate"] = certificate_to_json(*result.certificate);
  OutputSink sink(config.output_path);
  sink.stream() << out.dump(2) << '\n';
  sink.close();
  if (!result.certificate) {
    std::cerr << "enc-lab derive: " << result.diagnostic() << '\n';
    return kExitSearchExhausted;
  }
  return kExitOk;
}

int run_appendix(const RunConfig& config) {
  const ReadoutReport report = readout_report(config.theta);
  OutputSink sink(config.output_path);
  sink.stream() << metadata_header(config, "appendix-check") << '\n';
  report.write_csv(sink.stream());
  sink.close();

  const ReadoutRow* worst = nullptr;
  for (const auto& r : report.rows) {
    if (worst == nullptr || r.deviation > worst->deviation) worst = &r;
  }
  std::ostringstream summary;
  summary << (report.pass() ? "PASS" : "FAIL") << " max_abs_dev=" << format_number(report.max_deviation)
          << " tolerance=0.002 rows=" << report.rows.size()
          << " unprinted_terms=" << report.unprinted_terms;
  if (worst != nullptr) summary << " worst=" << worst->probability << "@b" << worst->string_index;
  (sink.to_stdout() ? std::cerr : std::cout) << summary.str() << '\n';
  return report.pass() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic non-contextuality monogamy lab"};
  app.require_subcommand(1);

  RunConfig config;
  std::string form = "SEC2B";
  std::string example;
  std::string graph_path;
  std::string targets_path;

  app.add_option("--theta", config.theta, "Angle parameter in radians")->capture_default_str();
  app.add_option("--form", form, "CHSH term ordering: SEC2B or EQ4")->capture_default_str();
  app.add_option("--grid", config.grid_points, "Grid points for optimize")
      ->check(CLI::Range(std::size_t{3}, std::size_t{1000000}))
      ->capture_default_str();
  app.add_option("--out", config.output_path, "Output file (default stdout)");
  app.add_option("--noise", config.noise_lambda, "Depolarizing strength in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Seed recorded in output metadata")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep-mixed", "H_K1, H_K2 and their sum over the mixed family");
  auto* table = app.add_subcommand("table-pure", "Pure-family table against published values");
  auto* opt = app.add_subcommand("optimize", "Maximize the Alice-Bob violation over theta");
  auto* derive = app.add_subcommand("derive", "Derive a monogamy certificate");
  derive->add_option("--example", example, "Built-in scenario: chsh-tripartite or fig1");
  derive->add_option("--graph", graph_path, "Joint commutation graph JSON");
  derive->add_option("--targets", targets_path, "Target inequalities JSON");
  auto* appendix = app.add_subcommand("appendix-check", "Regenerate Pauli readout coefficients");
  for (auto* sub : {sweep, table, opt, derive, appendix}) sub->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    config.form = parse_chsh_form(form);
    if (*sweep) return run_sweep(config);
    if (*table) return run_table(config);
    if (*opt) return run_optimize(config);
    if (*derive) return run_derive(config, example, graph_path, targets_path);
    if (*appendix) return run_appendix(config);
  } catch (const FormatError& e) {
    std::cerr << "enc-lab: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "enc-lab: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
