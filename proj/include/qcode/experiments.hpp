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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcode/codes.hpp"
#include "qcode/errors.hpp"

namespace qcode {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Command { Verify, Recover, Constraints, ExportSpec };
enum class Format { Table, Json };

struct ExperimentConfig {
  Command command = Command::Verify;
  /// Built-in code name; ignored when spec_file is set.
  std::string code = "perfect5";
  std::string spec_file;
  std::uint64_t seed = 42;
  std::size_t trials = 10;
  std::size_t env_dim = kDefaultEnvDim;
  /// Error-event string for `recover`, e.g. "env:qubit=2,dim=2,seed=9".
  std::string error = "env:qubit=all";
  std::optional<std::string> output_path;
  Format format = Format::Table;

  /// trials >= 1, env_dim in [2, 8], known code name, parseable error event.
  void validate() const;
};

std::string command_name(Command c);

/// Parsed form of an error-event string. Unset seeds are derived per trial.
struct ErrorEventSpec {
  enum class Kind { Standard, Coherent, Mixture, Environment } kind = Kind::Standard;
  /// standard: syndrome index, or all syndromes when unset.
  std::optional<std::size_t> syndrome;
  std::optional<std::string> label;
  /// env: qubit, or every qubit when unset.
  std::optional<std::size_t> qubit;
  std::optional<std::size_t> dim;
  /// env: "random" (default), "identity", "x" or "z" interaction.
  std::string interaction = "random";
  std::optional<std::uint64_t> seed;
  /// mixture: term count for random mixtures, or a JSON file of terms.
  std::size_t terms = 2;
  std::optional<std::string> file;
};

/// Grammar: kind[:key=value[,key=value...]] with kinds standard, coherent,
/// mixture, env. Throws InvalidArgument naming the offending parameter.
ErrorEventSpec parse_error_event(const std::string& text);

/// Mixture file: {"terms": [{"p": 0.5, "c": [[re, im], ...]}, ...]}
MixtureError load_mixture_file(const std::string& path, const QuantumCode& code);

struct FidelityStats {
  double min = 1.0;
  double max = 0.0;
  double mean = 0.0;
  std::size_t count = 0;

  void add(double f);
  void finish();
};

struct Check {
  std::string name;
  /// The identity being checked, in words or symbols.
  std::string relation;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// A known limitation of the code (reported, does not fail the run).
  bool expected_fail = false;
  /// Informational only: never affects the verdict.
  bool report_only = false;
  std::optional<FidelityStats> fidelity;
  nlohmann::ordered_json details;

  bool ok() const { return pass || expected_fail || report_only; }
};

struct Report {
  ExperimentConfig config;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<Check> checks;

  bool verdict() const;
  nlohmann::ordered_json to_json() const;
  std::string to_table() const;
  std::string render() const;
};

QuantumCode load_code(const ExperimentConfig& config);

Report cmd_verify(const ExperimentConfig& config);
Report cmd_recover(const ExperimentConfig& config);
Report cmd_constraints(const ExperimentConfig& config);
/// Writes the code-spec file to config.output_path; the report echoes the
/// E checksum. Throws Error on I/O failure.
Report cmd_export_spec(const ExperimentConfig& config);

Report run(const ExperimentConfig& config);

}  // namespace qcode
