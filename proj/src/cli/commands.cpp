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

#include "catforge/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace catforge::cli {

namespace {

constexpr Complex kI(0.0, 1.0);

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CheckResult below(std::string name, double value, double tolerance) {
  return CheckResult{std::move(name), value, tolerance, value < tolerance};
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << contents;
  if (!f) throw Error("failed writing " + path.string());
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : cfg.resolved_entries()) j[k] = v;
  return j;
}

nlohmann::json nullable(std::optional<double> v) {
  if (v && std::isfinite(*v)) return *v;
  return nullptr;
}

TruncationConfig with_levels(TruncationConfig cfg, int n_levels) {
  cfg.n_levels = n_levels;
  return cfg;
}

/// max over the lowest `rank` levels of both qubit blocks
double projected_max(const Matrix& m, int n_levels, int rank) {
  double worst = 0.0;
  for (int qi = 0; qi < 2; ++qi) {
    for (int qj = 0; qj < 2; ++qj) {
      worst = std::max(worst, max_abs(m.block(qi * n_levels, qj * n_levels, rank, rank)));
    }
  }
  return worst;
}

}  // namespace

double time_to_amplitude(const DerivedParams& d, double target_amplitude) {
  const double b = std::abs(d.device.beta);
  if (!(b > 0.0)) throw Error("t* undefined for beta = 0");
  return std::sqrt(4.0 * target_amplitude / (d.omega * d.omega * b));
}

std::optional<double> small_t_exponent(const std::vector<double>& t,
                                       const std::vector<double>& values,
                                       std::size_t count, double floor) {
  std::vector<std::pair<double, double>> samples;
  for (std::size_t k = 0; k < t.size() && k < values.size(); ++k) {
    if (t[k] > 0.0 && values[k] > floor) samples.emplace_back(t[k], values[k]);
  }
  std::sort(samples.begin(), samples.end());
  if (samples.size() > count) samples.resize(count);
  if (samples.size() < 2) return std::nullopt;
  std::vector<double> xs, ys;
  for (const auto& [x, y] : samples) {
    xs.push_back(x);
    ys.push_back(y);
  }
  return fit_power_law_exponent(xs, ys);
}

// validate ------------------------------------------------------------------

std::vector<CheckResult> run_validation(const RunConfig& cfg) {
  cfg.validate();
  const TruncationConfig& tc = cfg.truncation;
  const int n = tc.n_levels;
  const DerivedParams d = derive_params(cfg.device);
  std::vector<CheckResult> checks;

  {
    const Matrix a = make_annihilation(tc).matrix();
    const Matrix defect = commutator(a, a.adjoint()) - Matrix::Identity(n, n);
    const int k = tc.interior_levels();
    checks.push_back(below("commutator [a,a^dag] = I on interior levels",
                           max_abs(defect.topLeftCorner(k, k)), 1e-12));
  }

  const Operator h_full = build_full_hamiltonian(d, tc);
  const Operator h_t = build_HT_direct(d, tc);
  const Operator h_jc = build_HT_jc(d, tc);
  checks.push_back(below("full Hamiltonian Hermitian", h_full.hermiticity_defect(), 1e-12));
  checks.push_back(below("transformed Hamiltonian Hermitian", h_t.hermiticity_defect(), 1e-12));
  checks.push_back(below("JC-type Hamiltonian Hermitian", h_jc.hermiticity_defect(), 1e-12));

  {
    double worst = 0.0;
    for (double beta : {0.0, 0.1, 0.25, 0.3, 0.5}) {
      for (double gamma : {0.0, 0.2, std::numbers::pi / 2.0}) {
        Device dev = d.device;
        dev.beta = beta;
        dev.gamma = gamma;
        worst = std::max(worst, build_T(derive_params(dev), tc).unitarity_defect());
      }
    }
    checks.push_back(below("T unitary over the (beta, gamma) grid", worst, 1e-10));
  }

  checks.push_back(below("T block form equals Pauli form",
                         max_abs(build_T(d, tc).matrix() - build_T_pauli(d, tc).matrix()),
                         1e-14));

  {
    const TruncationConfig big = with_levels(tc, 2 * n);
    const Matrix t = build_T(d, big).matrix();
    const Matrix conj = t * build_full_hamiltonian(d, big).matrix() * t.adjoint();
    const Matrix diff = conj - build_HT_direct(d, big).matrix();
    checks.push_back(below("T H T^dag equals transformed Hamiltonian on low levels",
                           projected_max(diff, 2 * n, n / 2), 1e-6));
  }

  {
    const TruncationConfig big = with_levels(tc, std::max(n, 64));
    const Matrix disp = displacement(1.0, big).matrix();
    double worst = 0.0;
    double factorial = 1.0;
    for (int k = 0; k <= 5; ++k) {
      if (k > 0) factorial *= k;
      worst = std::max(worst, std::abs(std::norm(disp(k, 0)) - std::exp(-1.0) / factorial));
    }
    checks.push_back(below("D(1)|0> photon statistics are Poissonian", worst, 1e-10));
  }

  {
    const Complex mu(0.8, 0.3);
    const StateVector c = coherent_state(mu, tc);
    checks.push_back(below("coherent state eigenvalue <a> = mu",
                           std::abs(expectation_a(c) - mu), 1e-8));
    const double m2 = 0.7;
    const Complex overlap = inner_product(coherent_state(m2, tc), coherent_state(-m2, tc));
    checks.push_back(below("coherent overlap <mu|-mu> = exp(-2|mu|^2)",
                           std::abs(overlap - std::exp(-2.0 * m2 * m2)), 1e-8));
  }

  {
    const Matrix a = make_annihilation(tc).matrix();
    const Complex beta = d.device.beta;
    const Operator arg(2.0 * (beta * a + std::conj(beta) * a.adjoint()) +
                           2.0 * d.device.gamma * Matrix::Identity(n, n),
                       OperatorRole::hermitian);
    const Matrix c = operator_cosine(arg).matrix();
    const Matrix s = operator_sine(arg).matrix();
    checks.push_back(below("cos^2 + sin^2 = I", max_abs(c * c + s * s - Matrix::Identity(n, n)),
                           1e-10));
  }

  {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      Matrix x(n, n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) x(i, j) = Complex(gauss(rng), gauss(rng));
      }
      const Operator m(0.5 * (x - x.adjoint()));
      worst = std::max(worst, matrix_exponential(m).unitarity_defect());
    }
    checks.push_back(below("exp(anti-Hermitian) unitary (20 random draws)", worst, 1e-10));
  }

  {
    const double t = cfg.time.stop;
    double worst = 0.0;
    Warnings sink;
    for (PropagatorKind kind : kAllPropagatorKinds) {
      worst = std::max(worst, propagator(kind, d, tc, t, &sink).unitarity_defect());
    }
    checks.push_back(below("all propagators unitary at t_stop", worst, 1e-10));

    const StateVector rotated =
        apply_R(evolve_initial_state(PropagatorKind::analytic, d, tc, t, &sink));
    const QubitMeasurement m = measure_qubit(rotated);
    checks.push_back(below("measurement probabilities sum to 1", std::abs(m.prob_e + m.prob_g - 1.0),
                           1e-12));

    const StateVector psi = evolve_initial_state(PropagatorKind::analytic, d, tc, t, &sink);
    const StateVector branch = qubit_block(psi, QubitOutcome::e).normalized();
    const double expected = std::abs(beta_tilde(d, t));
    checks.push_back(below("|<a>| of the |e> branch equals |beta~| at t_stop",
                           std::abs(std::abs(expectation_a(branch)) - expected), 1e-8));
  }
  return checks;
}

// cat -----------------------------------------------------------------------

CatRun run_cat(const RunConfig& cfg) {
  cfg.validate();
  const TruncationConfig& tc = cfg.truncation;
  const DerivedParams d = derive_params(cfg.device);
  CatRun run;
  run.table.columns = {"t",        "beta_tilde_abs", "abs_expectation_a", "fidelity_vs_ideal_cat",
                       "fidelity_minus_vs_ideal_cat", "prob_e", "prob_g", "leakage"};
  if (cfg.kind == PropagatorKind::analytic && !regime_check(d, cfg.regime_threshold).jc_valid) {
    detail::warn(&run.warnings, "analytic propagator used outside the JC regime");
  }

  std::optional<StateVector> last_plus;
  for (double t : cfg.time.points()) {
    const StateVector psi = evolve_initial_state(cfg.kind, d, tc, t, &run.warnings);
    const StateVector e_branch = qubit_block(psi, QubitOutcome::e);
    const double abs_a = e_branch.squared_norm() > kZeroProbability
                             ? std::abs(expectation_a(e_branch.normalized()))
                             : 0.0;

    const QubitMeasurement m = measure_qubit(apply_R(psi));
    const Complex bt = beta_tilde(d, t);
    const Complex mu = std::exp(-kI * (d.omega * t)) * bt;
    const double theta = d.e_z * t;

    std::vector<std::string> flags;
    auto cat_fidelity = [&](const std::optional<StateVector>& field, CatSign sign,
                            const char* outcome) {
      if (!field) {
        flags.push_back(std::string("zero_probability_") + outcome);
        return 0.0;
      }
      try {
        return fidelity(*field, ideal_cat(mu, theta, sign, tc, &run.warnings));
      } catch (const Error&) {
        flags.push_back(std::string("ideal_cat_undefined_") + outcome);
        return 0.0;
      }
    };
    const double fid_plus = cat_fidelity(m.field_e, CatSign::plus, "e");
    const double fid_minus = cat_fidelity(m.field_g, CatSign::minus, "g");
    const double leakage = m.field_e ? truncation_leakage(*m.field_e, tc) : 0.0;
    if (m.field_e) last_plus = m.field_e;

    std::string flag;
    for (const auto& f : flags) flag += (flag.empty() ? "" : "|") + f;
    run.table.rows.push_back({t, std::abs(bt), abs_a, fid_plus, fid_minus, m.prob_e, m.prob_g, leakage});
    run.table.flags.push_back(flag);
  }

  if (cfg.wigner && last_plus) {
    run.wigner = wigner(*last_plus, cfg.wigner_grid, &run.warnings);
  }
  return run;
}

// compare -------------------------------------------------------------------

CompareRun run_compare(const RunConfig& cfg) {
  cfg.validate();
  const TruncationConfig& tc = cfg.truncation;
  const DerivedParams d = derive_params(cfg.device);
  const int rank = cfg.projector_rank;
  const StateVector psi0 = initial_state(tc);

  CompareRun run;
  run.table.columns = {"t",
                       "disc_analytic_vs_jc",
                       "disc_jc_vs_transformed",
                       "disc_transformed_vs_full",
                       "disc_bch_factorized_vs_jc",
                       "infid_analytic_vs_jc",
                       "infid_jc_vs_transformed",
                       "infid_transformed_vs_full"};
  Warnings sink;
  for (double t : cfg.time.points()) {
    const Operator u_an = propagator(PropagatorKind::analytic, d, tc, t, &sink);
    const Operator u_jc = propagator(PropagatorKind::exact_jc, d, tc, t);
    const Operator u_tr = propagator(PropagatorKind::exact_transformed, d, tc, t);
    const Operator u_full = propagator(PropagatorKind::exact_full, d, tc, t);
    const Operator u_bch = propagator_bch_factorized(d, t, tc);
    auto infid = [&](const Operator& u1, const Operator& u2) {
      return 1.0 - fidelity(u1 * psi0, u2 * psi0);
    };
    run.table.rows.push_back({t, propagator_discrepancy(u_an, u_jc, rank),
                              propagator_discrepancy(u_jc, u_tr, rank),
                              propagator_discrepancy(u_tr, u_full, rank),
                              propagator_discrepancy(u_bch, u_jc, rank), infid(u_an, u_jc),
                              infid(u_jc, u_tr), infid(u_tr, u_full)});
  }

  std::vector<double> ts;
  for (const auto& row : run.table.rows) ts.push_back(row[0]);
  for (std::size_t c = 1; c < run.table.columns.size(); ++c) {
    std::vector<double> col;
    for (const auto& row : run.table.rows) col.push_back(row[c]);
    run.exponents.emplace_back(run.table.columns[c], small_t_exponent(ts, col));
  }
  return run;
}

// scaling -------------------------------------------------------------------

ScalingRun run_scaling(const RunConfig& cfg) {
  cfg.validate();
  const TruncationConfig& tc = cfg.truncation;
  const DerivedParams d = derive_params(cfg.device);
  ScalingRun run;
  run.table.columns = {"t", "beta_tilde_abs", "abs_expectation_a", "abs_error"};
  std::vector<double> ts, amps;
  Warnings sink;
  for (double t : cfg.time.points()) {
    const StateVector psi = evolve_initial_state(cfg.kind, d, tc, t, &sink);
    const StateVector branch = qubit_block(psi, QubitOutcome::e);
    const double amp = branch.squared_norm() > kZeroProbability
                           ? std::abs(expectation_a(branch.normalized()))
                           : 0.0;
    const double predicted = std::abs(beta_tilde(d, t));
    run.table.rows.push_back({t, predicted, amp, std::abs(amp - predicted)});
    if (t > 0.0 && amp > 0.0) {
      ts.push_back(t);
      amps.push_back(amp);
    }
  }
  run.slope = ts.size() >= 2 ? fit_power_law_exponent(ts, amps)
                             : std::numeric_limits<double>::quiet_NaN();
  run.target_amplitude = cfg.target_amplitude;
  run.t_star = time_to_amplitude(d, cfg.target_amplitude);
  return run;
}

// derive --------------------------------------------------------------------

nlohmann::json derive_report(const RunConfig& cfg) {
  const DerivedParams d = derive_params(cfg.device);
  const RegimeReport r = regime_check(d, cfg.regime_threshold);
  nlohmann::json j;
  j["device"] = {{"e_ch", d.device.e_ch},
                 {"e_j", d.device.e_j},
                 {"n_g", d.device.n_g},
                 {"gamma", d.device.gamma},
                 {"beta", {{"re", d.device.beta.real()}, {"im", d.device.beta.imag()}}}};
  j["derived"] = {{"omega", d.omega},
                  {"e_z", d.e_z},
                  {"alpha", {{"re", d.alpha.real()}, {"im", d.alpha.imag()}}},
                  {"regime_ratio", std::isfinite(d.regime_ratio) ? nlohmann::json(d.regime_ratio)
                                                                 : nlohmann::json("inf")}};
  j["regime"] = {{"ratio", std::isfinite(r.ratio) ? nlohmann::json(r.ratio) : nlohmann::json("inf")},
                 {"threshold", cfg.regime_threshold},
                 {"beta_ok", r.beta_ok},
                 {"jc_valid", r.jc_valid}};
  return j;
}

// output --------------------------------------------------------------------

std::string render_csv(const std::string& subcommand, const RunConfig& cfg,
                       const SweepResult& table, const std::vector<std::string>& header_comments,
                       const std::vector<std::string>& trailing_comments) {
  std::ostringstream os;
  os << "# catforge " << subcommand << '\n';
  os << "# config:";
  for (const auto& [k, v] : cfg.resolved_entries()) os << ' ' << k << '=' << v;
  os << '\n';
  for (const auto& c : header_comments) os << "# " << c << '\n';

  const bool flagged = !table.flags.empty();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  if (flagged) os << ",flag";
  os << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
    if (flagged) os << ',' << table.flags[r];
    os << '\n';
  }
  for (const auto& c : trailing_comments) os << "# " << c << '\n';
  return os.str();
}

std::string render_wigner_csv(const RunConfig& cfg, const WignerGrid& grid) {
  std::ostringstream os;
  os << "# catforge wigner (final-time Phi+)\n";
  os << "# config:";
  for (const auto& [k, v] : cfg.resolved_entries()) os << ' ' << k << '=' << v;
  os << '\n';
  os << "# quadrature convention: " << kQuadratureConvention << '\n';
  os << "x,p,W\n";
  for (int i = 0; i < grid.spec.n_x; ++i) {
    for (int j = 0; j < grid.spec.n_p; ++j) {
      os << format_number(grid.spec.x(i)) << ',' << format_number(grid.spec.p(j)) << ','
         << format_number(grid.values(i, j)) << '\n';
    }
  }
  return os.str();
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const std::vector<CheckResult> checks = run_validation(cfg);
  nlohmann::json report;
  report["subcommand"] = "validate";
  report["config"] = config_json(cfg);
  report["checks"] = nlohmann::json::array();
  SweepResult table;
  table.columns = {"value", "tolerance", "passed"};
  std::vector<std::string> failures;
  for (const auto& c : checks) {
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << format_number(c.value)
        << " < " << format_number(c.tolerance) << '\n';
    report["checks"].push_back(
        {{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    if (!c.passed) failures.push_back(c.name);
  }
  report["passed"] = failures.empty();
  report["failures"] = failures;

  std::ostringstream csv;
  csv << "# catforge validate\n# config:";
  for (const auto& [k, v] : cfg.resolved_entries()) csv << ' ' << k << '=' << v;
  csv << "\ncheck,value,tolerance,passed\n";
  for (const auto& c : checks) {
    csv << '"' << c.name << "\"," << format_number(c.value) << ',' << format_number(c.tolerance)
        << ',' << (c.passed ? 1 : 0) << '\n';
  }
  write_file(cfg.out / "validate.csv", csv.str());
  write_file(cfg.out / "validate.json", report.dump(2) + "\n");

  if (!failures.empty()) {
    out << failures.size() << " check(s) failed\n";
    return kExitFailure;
  }
  out << "all " << checks.size() << " checks passed\n";
  return kExitOk;
}

int cmd_cat(const RunConfig& cfg, std::ostream& out) {
  const CatRun run = run_cat(cfg);
  write_file(cfg.out / "cat.csv", render_csv("cat", cfg, run.table));
  nlohmann::json report;
  report["subcommand"] = "cat";
  report["config"] = config_json(cfg);
  report["rows"] = run.table.rows.size();
  std::size_t flagged = 0;
  for (const auto& f : run.table.flags) flagged += f.empty() ? 0 : 1;
  report["flagged_rows"] = flagged;
  report["warnings"] = run.warnings;
  if (run.wigner) {
    write_file(cfg.out / "wigner.csv", render_wigner_csv(cfg, *run.wigner));
    report["wigner"] = {{"min", run.wigner->min()},
                        {"max", run.wigner->max()},
                        {"integral", run.wigner->integral()},
                        {"convention", kQuadratureConvention}};
  }
  write_file(cfg.out / "cat.json", report.dump(2) + "\n");
  out << "cat: " << run.table.rows.size() << " rows (" << flagged << " flagged) -> "
      << (cfg.out / "cat.csv").string() << '\n';
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const CompareRun run = run_compare(cfg);
  std::vector<std::string> trailing;
  nlohmann::json exps = nlohmann::json::object();
  for (const auto& [name, e] : run.exponents) {
    trailing.push_back("fit_exponent " + name + " = " +
                       (e ? format_number(*e) : std::string("undefined")));
    exps[name] = nullable(e);
  }
  write_file(cfg.out / "compare.csv",
             render_csv("compare", cfg, run.table,
                        {"projector: lowest " + std::to_string(cfg.projector_rank) +
                         " Fock levels in each qubit block; global phase aligned"},
                        trailing));
  nlohmann::json report;
  report["subcommand"] = "compare";
  report["config"] = config_json(cfg);
  report["fit_exponents"] = exps;
  write_file(cfg.out / "compare.json", report.dump(2) + "\n");
  for (const auto& line : trailing) out << line << '\n';
  return kExitOk;
}

int cmd_scaling(const RunConfig& cfg, std::ostream& out) {
  const ScalingRun run = run_scaling(cfg);
  const std::vector<std::string> trailing = {
      "loglog_slope = " + format_number(run.slope),
      "target_amplitude = " + format_number(run.target_amplitude),
      "t_star = " + format_number(run.t_star)};
  write_file(cfg.out / "scaling.csv", render_csv("scaling", cfg, run.table, {}, trailing));
  nlohmann::json report;
  report["subcommand"] = "scaling";
  report["config"] = config_json(cfg);
  report["loglog_slope"] = nullable(run.slope);
  report["target_amplitude"] = run.target_amplitude;
  report["t_star"] = run.t_star;
  write_file(cfg.out / "scaling.json", report.dump(2) + "\n");
  for (const auto& line : trailing) out << line << '\n';
  return kExitOk;
}

int cmd_derive(const RunConfig& cfg, std::ostream& out) {
  const nlohmann::json report = derive_report(cfg);
  const std::string text = report.dump(2) + "\n";
  write_file(cfg.out / "derive.json", text);
  out << text;
  return kExitOk;
}

// command line --------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"catforge: cat-state preparation with a charge qubit in a cavity"};
  std::string command;
  std::string config_path;
  std::string out_dir, kind, n_levels, t_start, t_stop, t_steps;
  std::vector<std::string> sets;
  bool wigner_flag = false;

  app.add_option("command", command, "validate | cat | compare | scaling | derive")
      ->required()
      ->check(CLI::IsMember({"validate", "cat", "compare", "scaling", "derive"}));
  app.add_option("--config", config_path, "key = value config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--wigner", wigner_flag, "write wigner.csv for the final-time Phi+ (cat)");
  app.add_option("--kind", kind, "exact_full | exact_transformed | exact_jc | analytic");
  app.add_option("--n-levels", n_levels, "Fock truncation");
  app.add_option("--t-start", t_start, "time grid start");
  app.add_option("--t-stop", t_stop, "time grid stop");
  app.add_option("--t-steps", t_steps, "time grid intervals");
  app.add_option("--set", sets, "extra key=value override (repeatable)");

  std::vector<std::string> argv_storage{"catforge"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
      apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    if (!out_dir.empty()) apply_setting(cfg, "out", out_dir);
    if (!kind.empty()) apply_setting(cfg, "kind", kind);
    if (!n_levels.empty()) apply_setting(cfg, "n_levels", n_levels);
    if (!t_start.empty()) apply_setting(cfg, "t_start", t_start);
    if (!t_stop.empty()) apply_setting(cfg, "t_stop", t_stop);
    if (!t_steps.empty()) apply_setting(cfg, "t_steps", t_steps);
    if (wigner_flag) cfg.wigner = true;
    cfg.validate();
    ensure_writable_directory(cfg.out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }

  try {
    if (command == "validate") return cmd_validate(cfg, out);
    if (command == "cat") return cmd_cat(cfg, out);
    if (command == "compare") return cmd_compare(cfg, out);
    if (command == "scaling") return cmd_scaling(cfg, out);
    return cmd_derive(cfg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace catforge::cli
