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

// Run configuration: flat `key = value` text files plus command-line
// overrides, later entries winning.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catforge/diagnostics.hpp"
#include "catforge/dynamics.hpp"
#include "catforge/fock.hpp"
#include "catforge/model.hpp"

namespace catforge::cli {

/// `steps` intervals, i.e. steps + 1 points from start to stop inclusive.
struct TimeGrid {
  double start = 0.0;
  double stop = 2.0;
  int steps = 8;

  void validate() const;
  std::vector<double> points() const;
};

struct RunConfig {
  DeviceParams device;
  TruncationConfig truncation;
  TimeGrid time;
  PropagatorKind kind = PropagatorKind::analytic;
  WignerGridSpec wigner_grid;
  bool wigner = false;
  std::filesystem::path out = "out";
  std::uint64_t seed = 20260101;
  double target_amplitude = 1.0;
  double regime_threshold = kDefaultRegimeThreshold;
  int projector_rank = 32;

  /// Checks every invariant except output-directory writability.
  void validate() const;

  /// Every key with its resolved value, in a fixed order. Device entries are
  /// the resolved device plus whichever raw inputs were supplied.
  std::vector<std::pair<std::string, std::string>> resolved_entries() const;
};

/// Names accepted in config files and --set overrides.
const std::vector<std::string>& config_keys();

/// Sets one key. Throws ConfigError on an unknown key or malformed value.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);

/// Applies every `key = value` line of `text` on top of `cfg`. Blank lines and
/// `#` comments are ignored.
void apply_config_text(RunConfig& cfg, std::string_view text);

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Accepts `0.3`, `-0.1i`, `0.3+0.1i`, `0.3-2e-3i`.
Complex parse_complex(std::string_view text);
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);
bool parse_bool(std::string_view text);

/// Round-trip decimal, 17 significant digits.
std::string format_number(double value);
std::string format_complex(Complex value);

/// Creates the directory if needed and probes it with a scratch file.
/// Throws ConfigError when it cannot be written.
void ensure_writable_directory(const std::filesystem::path& dir);

}  // namespace catforge::cli
