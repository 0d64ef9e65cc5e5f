// Copyright 2026 The qcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qcode/exceptions.hpp"
#include "qcode/experiments.hpp"

namespace {

void add_common(CLI::App* sub, qcode::ExperimentConfig& cfg, std::string& format, std::string& out) {
  sub->add_option("--code", cfg.code, "built-in code: repetition3, perfect5, steane7");
  sub->add_option("--spec-file", cfg.spec_file, "code-spec file (overrides --code)");
  sub->add_option("--seed", cfg.seed, "master seed");
  sub->add_option("--trials", cfg.trials, "trials per suite (>= 1)");
  sub->add_option("--env-dim", cfg.env_dim, "environment dimension in [2, 8]");
  sub->add_option("--format", format, "table or json")->check(CLI::IsMember({"table", "json"}));
  sub->add_option("--out", out, "write the report (export-spec: the spec file) here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcode: quantum error-correction experiment runner"};
  app.set_version_flag("--version", std::string(qcode::kToolVersion));
  app.require_subcommand(1);

  qcode::ExperimentConfig cfg;
  std::string format = "table";
  std::string out;

  auto* verify = app.add_subcommand("verify", "code construction, completeness and per-qubit scalar products");
  auto* recover = app.add_subcommand("recover", "encode, corrupt and recover with both methods");
  auto* constraints = app.add_subcommand("constraints", "gauge, representation and constraint-algebra suites");
  auto* export_spec = app.add_subcommand("export-spec", "write a code-spec file");
  for (auto* sub : {verify, recover, constraints, export_spec}) add_common(sub, cfg, format, out);
  recover->add_option("--error", cfg.error, "error event, e.g. standard:a=3, coherent:seed=5, env:qubit=2,dim=2,seed=9");

  CLI11_PARSE(app, argc, argv);

  if (verify->parsed()) cfg.command = qcode::Command::Verify;
  if (recover->parsed()) cfg.command = qcode::Command::Recover;
  if (constraints->parsed()) cfg.command = qcode::Command::Constraints;
  if (export_spec->parsed()) cfg.command = qcode::Command::ExportSpec;
  cfg.format = format == "json" ? qcode::Format::Json : qcode::Format::Table;
  if (!out.empty()) cfg.output_path = out;

  try {
    const qcode::Report report = qcode::run(cfg);
    const std::string text = report.render();
    if (cfg.output_path && cfg.command != qcode::Command::ExportSpec) {
      std::ofstream f(*cfg.output_path, std::ios::binary);
      if (!(f << text)) throw qcode::Error("cannot write report to '" + *cfg.output_path + "'");
    } else {
      std::cout << text;
    }
    return report.verdict() ? EXIT_SUCCESS : EXIT_FAILURE;
  } catch (const qcode::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
