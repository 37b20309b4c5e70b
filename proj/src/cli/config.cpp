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

#include "catforge/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace catforge::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view what, std::string_view text) {
  throw ConfigError("malformed " + std::string(what) + " '" + std::string(text) + "'");
}

void set_double(std::optional<double>& slot, std::string_view v) { slot = parse_double(v); }

int parse_int(std::string_view v) {
  const long long x = parse_integer(v);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    bad_value("integer", v);
  }
  return static_cast<int>(x);
}

}  // namespace

double parse_double(std::string_view text) {
  const std::string_view s = trim(text);
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    bad_value("number", text);
  }
  return value;
}

long long parse_integer(std::string_view text) {
  const std::string_view s = trim(text);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    bad_value("integer", text);
  }
  return value;
}

bool parse_bool(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  bad_value("boolean", text);
}

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '\t') s.push_back(c);
  }
  if (s.empty()) bad_value("complex number", text);
  const char last = s.back();
  if (last != 'i' && last != 'j') return {parse_double(s), 0.0};

  s.pop_back();
  // split at the last sign that is not the leading sign or an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](std::string_view part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_double(part);
  };
  if (split == std::string::npos) return {0.0, imag_of(s)};
  return {parse_double(std::string_view(s).substr(0, split)),
          imag_of(std::string_view(s).substr(split))};
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_complex(Complex value) {
  std::string im = format_number(value.imag());
  if (im.front() != '-') im.insert(im.begin(), '+');
  return format_number(value.real()) + im + "i";
}

void TimeGrid::validate() const {
  if (steps < 1) throw ConfigError("t_steps must be at least 1");
  if (!(start >= 0.0)) throw ConfigError("t_start must be non-negative");
  if (!(stop >= start)) throw ConfigError("t_stop must not be below t_start");
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    ts.push_back(k == steps ? stop : start + (stop - start) * k / steps);
  }
  return ts;
}

void RunConfig::validate() const {
  truncation.validate();
  time.validate();
  wigner_grid.validate();
  (void)resolve_device(device);
  if (projector_rank < 1 || projector_rank > truncation.n_levels) {
    throw ConfigError("projector_rank must lie in [1, n_levels]");
  }
  if (!(target_amplitude > 0.0)) throw ConfigError("target_amplitude must be positive");
  if (!(regime_threshold > 0.0)) throw ConfigError("regime_threshold must be positive");
  if (out.empty()) throw ConfigError("out must not be empty");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "e_ch",        "e_j",          "n_g",          "gamma",
      "beta",        "c_g",          "c_j",          "v_g",
      "phi_c",       "eta",          "n_levels",     "leakage_fraction",
      "t_start",     "t_stop",       "t_steps",      "kind",
      "wigner",      "wigner_x_min", "wigner_x_max", "wigner_p_min",
      "wigner_p_max", "wigner_n_x",  "wigner_n_p",   "out",
      "seed",        "target_amplitude", "regime_threshold", "projector_rank"};
  return keys;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view raw) {
  const std::string_view v = trim(raw);
  DeviceParams& d = cfg.device;
  if (key == "e_ch") set_double(d.e_ch, v);
  else if (key == "e_j") set_double(d.e_j, v);
  else if (key == "n_g") set_double(d.n_g, v);
  else if (key == "gamma") set_double(d.gamma, v);
  else if (key == "beta") d.beta = parse_complex(v);
  else if (key == "c_g") set_double(d.c_g, v);
  else if (key == "c_j") set_double(d.c_j, v);
  else if (key == "v_g") set_double(d.v_g, v);
  else if (key == "phi_c") set_double(d.phi_c, v);
  else if (key == "eta") d.eta = parse_complex(v);
  else if (key == "n_levels") cfg.truncation.n_levels = parse_int(v);
  else if (key == "leakage_fraction") cfg.truncation.leakage_fraction = parse_double(v);
  else if (key == "t_start") cfg.time.start = parse_double(v);
  else if (key == "t_stop") cfg.time.stop = parse_double(v);
  else if (key == "t_steps") cfg.time.steps = parse_int(v);
  else if (key == "kind") cfg.kind = parse_propagator_kind(v);
  else if (key == "wigner") cfg.wigner = parse_bool(v);
  else if (key == "wigner_x_min") cfg.wigner_grid.x_min = parse_double(v);
  else if (key == "wigner_x_max") cfg.wigner_grid.x_max = parse_double(v);
  else if (key == "wigner_p_min") cfg.wigner_grid.p_min = parse_double(v);
  else if (key == "wigner_p_max") cfg.wigner_grid.p_max = parse_double(v);
  else if (key == "wigner_n_x") cfg.wigner_grid.n_x = parse_int(v);
  else if (key == "wigner_n_p") cfg.wigner_grid.n_p = parse_int(v);
  else if (key == "out") {
    if (v.empty()) bad_value("path", raw);
    cfg.out = std::string(v);
  } else if (key == "seed") {
    const long long s = parse_integer(v);
    if (s < 0) bad_value("seed", v);
    cfg.seed = static_cast<std::uint64_t>(s);
  } else if (key == "target_amplitude") cfg.target_amplitude = parse_double(v);
  else if (key == "regime_threshold") cfg.regime_threshold = parse_double(v);
  else if (key == "projector_rank") cfg.projector_rank = parse_int(v);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_config_text(RunConfig& cfg, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    try {
      apply_setting(cfg, key, line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved_entries() const {
  const Device dev = resolve_device(device);
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("e_ch", format_number(dev.e_ch));
  e.emplace_back("e_j", format_number(dev.e_j));
  e.emplace_back("n_g", format_number(dev.n_g));
  e.emplace_back("gamma", format_number(dev.gamma));
  e.emplace_back("beta", format_complex(dev.beta));
  if (device.c_g) e.emplace_back("c_g", format_number(*device.c_g));
  if (device.c_j) e.emplace_back("c_j", format_number(*device.c_j));
  if (device.v_g) e.emplace_back("v_g", format_number(*device.v_g));
  if (device.phi_c) e.emplace_back("phi_c", format_number(*device.phi_c));
  if (device.eta) e.emplace_back("eta", format_complex(*device.eta));
  e.emplace_back("n_levels", std::to_string(truncation.n_levels));
  e.emplace_back("leakage_fraction", format_number(truncation.leakage_fraction));
  e.emplace_back("t_start", format_number(time.start));
  e.emplace_back("t_stop", format_number(time.stop));
  e.emplace_back("t_steps", std::to_string(time.steps));
  e.emplace_back("kind", to_string(kind));
  e.emplace_back("wigner", wigner ? "true" : "false");
  e.emplace_back("wigner_x_min", format_number(wigner_grid.x_min));
  e.emplace_back("wigner_x_max", format_number(wigner_grid.x_max));
  e.emplace_back("wigner_p_min", format_number(wigner_grid.p_min));
  e.emplace_back("wigner_p_max", format_number(wigner_grid.p_max));
  e.emplace_back("wigner_n_x", std::to_string(wigner_grid.n_x));
  e.emplace_back("wigner_n_p", std::to_string(wigner_grid.n_p));
  e.emplace_back("out", out.generic_string());
  e.emplace_back("seed", std::to_string(seed));
  e.emplace_back("target_amplitude", format_number(target_amplitude));
  e.emplace_back("regime_threshold", format_number(regime_threshold));
  e.emplace_back("projector_rank", std::to_string(projector_rank));
  return e;
}

void ensure_writable_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
  const auto probe = dir / ".catforge_write_probe";
  {
    std::ofstream f(probe, std::ios::binary);
    if (!f || !(f << "probe")) {
      throw ConfigError("output directory " + dir.string() + " is not writable");
    }
  }
  std::filesystem::remove(probe, ec);
}

}  // namespace catforge::cli
