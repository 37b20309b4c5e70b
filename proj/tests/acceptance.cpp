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

// Acceptance gate: one pass/fail line per criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catforge/cli/commands.hpp"
#include "catforge/diagnostics.hpp"
#include "catforge/dynamics.hpp"
#include "catforge/model.hpp"
#include "oracles.hpp"

using namespace catforge;

namespace {

struct Verdict {
  bool passed = true;
  std::string detail;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

TruncationConfig levels(int n) {
  TruncationConfig cfg;
  cfg.n_levels = n;
  return cfg;
}

/// Max entry of M restricted to field levels < rank inside every qubit block.
double low_block_max(const Matrix& m, int n, int rank) {
  double worst = 0.0;
  for (int q = 0; q < 2; ++q)
    for (int r = 0; r < 2; ++r)
      worst = std::max(worst, m.block(q * n, r * n, rank, rank).cwiseAbs().maxCoeff());
  return worst;
}

// -- observables shared with the truncation study --------------------------

constexpr double kOmega = 1.0;
constexpr double kBeta = 0.3;

/// Fidelity of exact_jc vs exact_transformed from the initial state, ωt ∈ [0, 5].
std::vector<double> jc_regime_fidelities(int n) {
  const TruncationConfig cfg = levels(n);
  const DerivedParams d = oracle::params_for(kOmega, kBeta, 0.2, 0.01, 0.0);
  const StateVector psi0 = initial_state(cfg);
  std::vector<double> out;
  for (int k = 0; k <= 20; ++k) {
    const double t = 0.25 * k;
    out.push_back(fidelity(propagator(PropagatorKind::exact_jc, d, cfg, t) * psi0,
                           propagator(PropagatorKind::exact_transformed, d, cfg, t) * psi0));
  }
  return out;
}

const std::vector<double> kAmplitudeTimes = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};

std::vector<double> branch_amplitudes(int n) {
  const TruncationConfig cfg = levels(n);
  const DerivedParams d = oracle::params_for(kOmega, kBeta, 0.2, 0.01, 0.0);
  std::vector<double> out;
  for (double t : kAmplitudeTimes) {
    const StateVector psi = evolve_initial_state(PropagatorKind::analytic, d, cfg, t);
    out.push_back(std::abs(expectation_a(qubit_block(psi, QubitOutcome::e).normalized())));
  }
  return out;
}

const std::vector<double> kSmallTimes = {0.01, 0.02, 0.05, 0.1, 0.2};

std::vector<double> residual_discrepancies(int n) {
  const TruncationConfig cfg = levels(n);
  const DerivedParams d = oracle::params_for(kOmega, kBeta, 0.2, 0.01, 0.1);
  std::vector<double> out;
  for (double t : kSmallTimes) {
    out.push_back(propagator_discrepancy(propagator(PropagatorKind::analytic, d, cfg, t),
                                         propagator(PropagatorKind::exact_jc, d, cfg, t), 32));
  }
  return out;
}

double time_for_beta_tilde(double magnitude) {
  return std::sqrt(4.0 * magnitude / (kOmega * kOmega * kBeta));
}

struct ProtocolObservables {
  std::vector<double> prob_sums;
  double prob_e_unit = 0.0;  ///< prob_e at |β̃| = 1
  std::vector<double> cat_fidelities;
};

ProtocolObservables protocol(int n) {
  const TruncationConfig cfg = levels(n);
  const DerivedParams d = oracle::params_for(kOmega, kBeta, 0.2, 0.01, 0.0);
  ProtocolObservables obs;
  for (int k = 0; k <= 16; ++k) {
    const double t = 0.25 * k;
    const QubitMeasurement m =
        measure_qubit(apply_R(evolve_initial_state(PropagatorKind::analytic, d, cfg, t)));
    obs.prob_sums.push_back(m.prob_e + m.prob_g);
    if (k == 0) continue;
    const CatPair cat = make_cat(d, cfg, t, PropagatorKind::analytic);
    const Complex mu = std::exp(Complex(0.0, -kOmega * t)) * cat.beta_tilde;
    obs.cat_fidelities.push_back(
        fidelity(cat.phi_plus, ideal_cat(mu, cat.phase_theta, CatSign::plus, cfg)));
    obs.cat_fidelities.push_back(
        fidelity(cat.phi_minus, ideal_cat(mu, cat.phase_theta, CatSign::minus, cfg)));
  }
  obs.prob_e_unit = make_cat(d, cfg, time_for_beta_tilde(1.0), PropagatorKind::analytic).prob_e;
  return obs;
}

double cat_wigner_min(int n) {
  const TruncationConfig cfg = levels(n);
  const DerivedParams d = oracle::params_for(kOmega, kBeta, 0.2, 0.01, 0.0);
  const CatPair cat = make_cat(d, cfg, time_for_beta_tilde(1.5), PropagatorKind::analytic);
  return wigner(cat.phi_plus, WignerGridSpec{}).min();
}

// -- criteria -----------------------------------------------------------------

Verdict criterion1() {
  const TruncationConfig cfg = levels(64);
  double worst = 0.0;
  for (double beta : {0.0, 0.1, 0.25, 0.3, 0.5}) {
    for (double gamma : {0.0, 0.2, std::numbers::pi / 2.0}) {
      const DerivedParams d = oracle::params_for(kOmega, beta, gamma, 0.05, 0.1);
      const Matrix t = build_T(d, cfg).matrix();
      worst = std::max(worst, oracle::max_abs(t.adjoint() * t - Matrix::Identity(128, 128)));
    }
  }
  return {worst < 1e-10, "T unitarity: max|T^dag T - I| = " + num(worst) + " (tol 1e-10)"};
}

Verdict criterion2() {
  const TruncationConfig cfg = levels(128);
  const DerivedParams d = oracle::params_for(kOmega, kBeta, 0.2, 0.05, 0.1);
  const Matrix t = build_T(d, cfg).matrix();
  const Matrix conj = t * build_full_hamiltonian(d, cfg).matrix() * t.adjoint();
  const double err = low_block_max(conj - build_HT_direct(d, cfg).matrix(), 128, 32);
  return {err < 1e-6,
          "transformed Hamiltonian: |P(T H T^dag - H_T)P|max = " + num(err) + " (tol 1e-6)"};
}

Verdict criterion3() {
  const std::vector<double> f = jc_regime_fidelities(64);
  const double worst = *std::min_element(f.begin(), f.end());
  return {worst >= 0.99, "JC regime: min fidelity over wt <= 5 = 1 - " + num(1.0 - worst) + " (need >= 0.99)"};
}

Verdict criterion4() {
  const std::vector<double> amp = branch_amplitudes(64);
  double worst = 0.0;
  for (std::size_t k = 0; k < amp.size(); ++k) {
    const double t = kAmplitudeTimes[k];
    worst = std::max(worst, std::abs(amp[k] - kOmega * kOmega * kBeta * t * t / 4.0));
  }
  const double slope = fit_power_law_exponent(kAmplitudeTimes, amp);
  const bool ok = worst < 1e-8 && std::abs(slope - 2.0) <= 0.01;
  return {ok, "beta~ law: max||<a>| - w^2 b t^2/4| = " + num(worst) + " (tol 1e-8), slope = " +
                  num(slope) + " (2 +- 0.01)"};
}

Verdict criterion5() {
  const std::vector<double> disc = residual_discrepancies(64);
  const double slope = fit_power_law_exponent(kSmallTimes, disc);
  const bool ok = slope >= 2.5 && slope <= 3.5 && disc.front() < 1e-5;
  return {ok, "residual order: fitted exponent = " + num(slope) + " (need [2.5, 3.5]), at wt=0.01 = " +
                  num(disc.front()) + " (need < 1e-5)"};
}

Verdict criterion6() {
  const ProtocolObservables obs = protocol(64);
  double sum_err = 0.0;
  for (double s : obs.prob_sums) sum_err = std::max(sum_err, std::abs(s - 1.0));
  const double expected = oracle::cat_prob_e(1.0, 0.0);
  const double p_err = std::abs(obs.prob_e_unit - expected);
  const double fid = *std::min_element(obs.cat_fidelities.begin(), obs.cat_fidelities.end());
  const bool ok = sum_err < 1e-12 && p_err < 1e-6 && fid >= 1.0 - 1e-8;
  return {ok, "measurement: |p_e + p_g - 1| = " + num(sum_err) + " (tol 1e-12), |p_e - (1+e^-2)/2| = " +
                  num(p_err) + " (tol 1e-6), min cat fidelity = 1 - " + num(1.0 - fid) +
                  " (tol 1e-8)"};
}

Verdict criterion7() {
  const double w = cat_wigner_min(64);
  return {w < -0.01, "nonclassicality: Wigner min at |beta~| = 1.5 is " + num(w) + " (need < -0.01)"};
}

double max_change(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

Verdict criterion8() {
  std::vector<std::pair<std::string, double>> changes;
  changes.emplace_back("C3", max_change(jc_regime_fidelities(64), jc_regime_fidelities(128)));
  changes.emplace_back("C4", max_change(branch_amplitudes(64), branch_amplitudes(128)));
  changes.emplace_back("C5", max_change(residual_discrepancies(64), residual_discrepancies(128)));
  const ProtocolObservables lo = protocol(64), hi = protocol(128);
  changes.emplace_back("C6", std::max({max_change(lo.prob_sums, hi.prob_sums),
                                       std::abs(lo.prob_e_unit - hi.prob_e_unit),
                                       max_change(lo.cat_fidelities, hi.cat_fidelities)}));
  changes.emplace_back("C7", std::abs(cat_wigner_min(64) - cat_wigner_min(128)));
  bool ok = true;
  std::string detail = "truncation 64 -> 128 max change:";
  for (const auto& [name, v] : changes) {
    ok = ok && v < 1e-6;
    detail += " " + name + " " + num(v);
  }
  return {ok, detail + " (tol 1e-6)"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict criterion9() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "catforge_acceptance_c9";
  fs::remove_all(dir);
  bool ok = true;
  std::string detail = "determinism:";
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
      {"validate", {"validate.csv"}},
      {"cat", {"cat.csv", "wigner.csv"}},
      {"compare", {"compare.csv"}},
      {"scaling", {"scaling.csv"}},
      {"derive", {"derive.json"}},
  };
  for (const auto& [sub, files] : runs) {
    std::vector<std::string> args = {sub, "--out", dir.string()};
    if (sub == "cat") args.push_back("--wigner");
    std::vector<std::string> first;
    std::ostringstream sink;
    bool same = cli::run(args, sink, sink) == cli::kExitOk;
    for (const auto& f : files) first.push_back(slurp(dir / f));
    same = same && cli::run(args, sink, sink) == cli::kExitOk;
    for (std::size_t k = 0; k < files.size(); ++k) {
      same = same && !first[k].empty() && first[k] == slurp(dir / files[k]);
    }
    ok = ok && same;
    detail += " " + sub + (same ? " identical" : " DIFFERS");
  }
  fs::remove_all(dir);
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"catforge acceptance criteria"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criterion number(s) 1-9; default all")
      ->check(CLI::Range(1, 9));
  CLI11_PARSE(app, argc, argv);
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::vector<std::function<Verdict()>> criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9};
  bool all = true;
  for (int c : selected) {
    Verdict v;
    try {
      v = criteria[static_cast<std::size_t>(c - 1)]();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    std::cout << (v.passed ? "[PASS] C" : "[FAIL] C") << c << ' ' << v.detail << std::endl;
    all = all && v.passed;
  }
  return all ? 0 : 1;
}
