// Copyright 2026 The catforge Authors
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

// Experiment subcommands. Each run_* function is pure given its config; the
// cmd_* wrappers write `<out>/<subcommand>.csv|json` and return an exit code.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "catforge/cli/config.hpp"

namespace catforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// One entry per row when the table carries a trailing `flag` column.
  std::vector<std::string> flags;
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct CatRun {
  SweepResult table;
  std::optional<WignerGrid> wigner;  ///< final-time Phi+ when requested
  Warnings warnings;
};

struct CompareRun {
  SweepResult table;
  /// Small-t power-law exponent per discrepancy/infidelity column; nullopt
  /// when fewer than two usable positive samples exist.
  std::vector<std::pair<std::string, std::optional<double>>> exponents;
};

struct ScalingRun {
  SweepResult table;
  double slope = 0.0;
  double target_amplitude = 1.0;
  double t_star = 0.0;
};

/// t* = sqrt(4 |mu*| / (omega^2 |beta|)), the time at which |beta~| = |mu*|.
double time_to_amplitude(const DerivedParams& d, double target_amplitude);

/// Fits the `count` smallest positive abscissae whose ordinates exceed
/// `floor`; nullopt with fewer than two.
std::optional<double> small_t_exponent(const std::vector<double>& t,
                                       const std::vector<double>& values,
                                       std::size_t count = 5, double floor = 1e-13);

std::vector<CheckResult> run_validation(const RunConfig& cfg);
CatRun run_cat(const RunConfig& cfg);
CompareRun run_compare(const RunConfig& cfg);
ScalingRun run_scaling(const RunConfig& cfg);
nlohmann::json derive_report(const RunConfig& cfg);

/// CSV with a `# config:` comment line, header row, 17-significant-digit
/// values and optional trailing comment lines.
std::string render_csv(const std::string& subcommand, const RunConfig& cfg,
                       const SweepResult& table,
                       const std::vector<std::string>& header_comments = {},
                       const std::vector<std::string>& trailing_comments = {});

std::string render_wigner_csv(const RunConfig& cfg, const WignerGrid& grid);

int cmd_validate(const RunConfig& cfg, std::ostream& out);
int cmd_cat(const RunConfig& cfg, std::ostream& out);
int cmd_compare(const RunConfig& cfg, std::ostream& out);
int cmd_scaling(const RunConfig& cfg, std::ostream& out);
int cmd_derive(const RunConfig& cfg, std::ostream& out);

/// Full command line (without the program name). Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace catforge::cli
