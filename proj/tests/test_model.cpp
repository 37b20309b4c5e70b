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

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "catforge/model.hpp"
#include "oracles.hpp"

using namespace catforge;
using oracle::max_abs;

namespace {

TruncationConfig levels(int n) {
  TruncationConfig cfg;
  cfg.n_levels = n;
  return cfg;
}

/// max entry of m over the lowest `rank` levels of every qubit block
double low_block_max(const Matrix& m, int n, int rank) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      worst = std::max(worst, max_abs(m.block(i * n, j * n, rank, rank)));
  return worst;
}

Matrix low_projection(const Matrix& m, int n, int rank) {
  Matrix p(2 * rank, 2 * rank);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) p.block(i * rank, j * rank, rank, rank) = m.block(i * n, j * n, rank, rank);
  return p;
}

double hermitian_norm(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> s(h);
  return s.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("derive_params formulas") {
  DeviceParams p;
  p.e_ch = 0.25;
  p.n_g = 0.5;
  p.beta = 0.3;
  p.e_j = 0.01;
  const DerivedParams d = derive_params(p);
  CHECK(d.omega == 1.0);
  CHECK(d.e_z == 0.0);
  CHECK(std::abs(d.alpha - Complex(0.0, 0.15)) < 1e-16);
  CHECK(std::abs(d.regime_ratio - 30.0) < 1e-12);

  DeviceParams q;
  q.e_ch = 0.5;
  q.n_g = 0.3;
  q.beta = Complex(0.2, 0.1);
  const DerivedParams dq = derive_params(q);
  CHECK(dq.omega == 2.0);
  CHECK(std::abs(dq.e_z - (-2.0 * 0.5 * (1.0 - 0.6))) < 1e-15);
  CHECK(std::abs(dq.alpha - Complex(0, 1) * std::conj(Complex(0.2, 0.1)) / 2.0) < 1e-16);
}

TEST_CASE("raw circuit inputs") {
  DeviceParams raw;
  raw.c_g = 0.5;
  raw.c_j = 0.75;  // e^2 / 2(C_g + 2 C_J) = 1 / (2 * 2) = 0.25
  raw.v_g = 2.0;   // C_g V_g / 2e = 0.5
  raw.phi_c = 0.5;
  raw.eta = 0.3 / std::numbers::pi;
  const Device dev = resolve_device(raw);
  CHECK(std::abs(dev.e_ch - 0.25) < 1e-15);
  CHECK(std::abs(dev.n_g - 0.5) < 1e-15);
  CHECK(std::abs(dev.gamma - std::numbers::pi / 2.0) < 1e-15);
  CHECK(std::abs(dev.beta - 0.3) < 1e-15);
  CHECK(std::abs(derive_params(raw).omega - 1.0) < 1e-15);

  SUBCASE("conflicts and incomplete inputs") {
    DeviceParams c = raw;
    c.e_ch = 0.25;
    CHECK_THROWS_AS(resolve_device(c), ConfigError);
    c = raw;
    c.n_g = 0.5;
    CHECK_THROWS_AS(resolve_device(c), ConfigError);
    c = raw;
    c.gamma = 0.1;
    CHECK_THROWS_AS(resolve_device(c), ConfigError);
    c = raw;
    c.beta = 0.3;
    CHECK_THROWS_AS(resolve_device(c), ConfigError);
    DeviceParams only_cj;
    only_cj.c_j = 1.0;
    CHECK_THROWS_AS(resolve_device(only_cj), ConfigError);
    DeviceParams only_vg;
    only_vg.v_g = 1.0;
    CHECK_THROWS_AS(resolve_device(only_vg), ConfigError);
  }

  SUBCASE("validity envelope") {
    DeviceParams bad;
    bad.e_ch = 0.0;
    CHECK_THROWS_AS(resolve_device(bad), ConfigError);
    bad = {};
    bad.e_j = -0.1;
    CHECK_THROWS_AS(resolve_device(bad), ConfigError);
    bad = {};
    bad.beta = Complex(0.8, 0.8);
    CHECK_THROWS_AS(resolve_device(bad), ConfigError);
  }
}

TEST_CASE("regime check") {
  RegimeReport r = regime_check(oracle::params_for(1.0, 0.3, 0.2, 0.01, 0.0));
  CHECK(std::abs(r.ratio - 30.0) < 1e-12);
  CHECK(r.beta_ok);
  CHECK(r.jc_valid);

  r = regime_check(oracle::params_for(1.0, 0.3, 0.2, 0.0, 0.0));
  CHECK(r.ratio == std::numeric_limits<double>::infinity());
  CHECK(r.jc_valid);

  r = regime_check(oracle::params_for(1.0, 0.1, 0.2, 0.05, 0.0));
  CHECK(std::abs(r.ratio - 2.0) < 1e-12);
  CHECK_FALSE(r.beta_ok);
  CHECK_FALSE(r.jc_valid);

  r = regime_check(oracle::params_for(1.0, 0.3, 0.2, 0.05, 0.0), 5.0);
  CHECK(r.jc_valid);  // ratio 6 >= 5
}

TEST_CASE("full Hamiltonian") {
  const TruncationConfig cfg = levels(64);
  const Matrix number = make_number(cfg).matrix();

  const Operator decoupled = build_full_hamiltonian(oracle::params_for(1.0, 0.3, 0.2, 0.0, 0.0), cfg);
  CHECK(max_abs(decoupled.matrix() - oracle::kron_loops(Matrix::Identity(2, 2), number)) == 0.0);

  const Operator h = build_full_hamiltonian(oracle::params_for(1.0, 0.3, 0.2, 0.05, 0.1), cfg);
  CHECK(h.role() == OperatorRole::hermitian);
  CHECK(h.hermiticity_defect() < 1e-12);

  const double e_j = 0.05;
  const Operator plain = build_full_hamiltonian(oracle::params_for(1.0, 0.0, 0.0, e_j, 0.0), cfg);
  const Matrix expected = oracle::kron_loops(Matrix::Identity(2, 2), number) -
                          e_j * oracle::kron_loops(sigma_x().matrix(), Matrix::Identity(64, 64));
  CHECK(max_abs(plain.matrix() - expected) < 1e-15);
}

TEST_CASE("transformation T") {
  const TruncationConfig cfg = levels(64);
  for (double beta : {0.0, 0.1, 0.25, 0.3, 0.5}) {
    for (double gamma : {0.0, 0.2, std::numbers::pi / 2.0}) {
      const DerivedParams d = oracle::params_for(1.0, beta, gamma, 0.01, 0.0);
      const Operator t = build_T(d, cfg);
      CHECK(t.unitarity_defect() < 1e-10);
      CHECK(max_abs(t.matrix() - build_T_pauli(d, cfg).matrix()) < 1e-14);
    }
  }

  const Operator t0 = build_T(oracle::params_for(1.0, 0.0, 0.0, 0.01, 0.0), cfg);
  const Matrix id = Matrix::Identity(64, 64);
  Matrix expected(128, 128);
  expected << -id, id, id, id;
  CHECK(max_abs(t0.matrix() - expected / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("exact transformed Hamiltonian") {
  SUBCASE("Hermitian and reduces in the trivial limit") {
    const TruncationConfig cfg = levels(64);
    const Operator h = build_HT_direct(oracle::params_for(1.0, 0.3, 0.2, 0.05, 0.0), cfg);
    CHECK(h.hermiticity_defect() < 1e-12);
    const Operator trivial = build_HT_direct(oracle::params_for(1.0, 0.0, 0.2, 0.0, 0.0), cfg);
    CHECK(max_abs(trivial.matrix() -
                  oracle::kron_loops(Matrix::Identity(2, 2), make_number(cfg).matrix())) < 1e-15);
  }

  SUBCASE("constant offset is (|beta|^2/4) omega") {
    const TruncationConfig cfg = levels(16);
    const DerivedParams d = oracle::params_for(2.0, 0.3, 0.2, 0.05, 0.1);
    const Matrix diff = build_HT_direct(d, cfg, true).matrix() - build_HT_direct(d, cfg, false).matrix();
    CHECK(max_abs(diff - 2.0 * 0.09 / 4.0 * Matrix::Identity(32, 32)) < 1e-13);
  }

  SUBCASE("agrees with T H T^dag on the low-level block") {
    const TruncationConfig cfg = levels(128);
    const DerivedParams d = oracle::params_for(1.0, 0.3, 0.2, 0.05, 0.1);
    const Matrix t = build_T(d, cfg).matrix();
    const Matrix conj = t * build_full_hamiltonian(d, cfg).matrix() * t.adjoint();
    CHECK(low_block_max(conj - build_HT_direct(d, cfg).matrix(), 128, 32) < 1e-6);
  }

  SUBCASE("conjugation consistency over the grid, lower half at 128 levels") {
    const TruncationConfig cfg = levels(128);
    for (double beta : {0.0, 0.1, 0.25, 0.3, 0.5}) {
      for (double gamma : {0.0, 0.2, std::numbers::pi / 2.0}) {
        const DerivedParams d = oracle::params_for(1.0, beta, gamma, 0.05, 0.1);
        const Matrix t = build_T(d, cfg).matrix();
        const Matrix conj = t * build_full_hamiltonian(d, cfg).matrix() * t.adjoint();
        CHECK(low_block_max(conj - build_HT_direct(d, cfg).matrix(), 128, 64) < 1e-6);
      }
    }
  }

  SUBCASE("complex beta") {
    const TruncationConfig cfg = levels(96);
    const DerivedParams d = oracle::params_for(1.0, Complex(0.2, 0.15), 0.4, 0.05, 0.1);
    const Matrix t = build_T(d, cfg).matrix();
    const Matrix conj = t * build_full_hamiltonian(d, cfg).matrix() * t.adjoint();
    CHECK(low_block_max(conj - build_HT_direct(d, cfg).matrix(), 96, 32) < 1e-6);
  }
}

TEST_CASE("JC-type transformed Hamiltonian") {
  const TruncationConfig cfg = levels(64);
  const Operator trivial = build_HT_jc(oracle::params_for(1.0, 0.0, 0.0, 0.01, 0.0), cfg);
  CHECK(max_abs(trivial.matrix() -
                oracle::kron_loops(Matrix::Identity(2, 2), make_number(cfg).matrix())) == 0.0);

  const Operator h = build_HT_jc(oracle::params_for(1.0, 0.3, 0.2, 0.01, 0.1), cfg);
  CHECK(h.hermiticity_defect() < 1e-12);

  SUBCASE("dropped terms are O(E_J) plus the constant") {
    const double e_j = 0.01;
    const DerivedParams d = oracle::params_for(1.0, 0.3, 0.2, e_j, 0.0);
    const Matrix diff = build_HT_direct(d, cfg).matrix() - build_HT_jc(d, cfg).matrix();
    const double constant = std::norm(0.3 / 2.0);
    CHECK(low_block_max(diff, 64, 32) <= 2.0 * e_j + constant);
  }

  SUBCASE("operator-norm bound over the grid") {
    for (double beta : {0.0, 0.1, 0.25, 0.3, 0.5}) {
      for (double gamma : {0.0, 0.2, std::numbers::pi / 2.0}) {
        const double e_j = 0.02;
        const DerivedParams d = oracle::params_for(1.0, beta, gamma, e_j, 0.1);
        const Matrix diff = build_HT_direct(d, cfg).matrix() - build_HT_jc(d, cfg).matrix();
        const Matrix p = low_projection(diff, 64, 32);
        CHECK(hermitian_norm(0.5 * (p + p.adjoint())) <= 3.0 * e_j + std::norm(beta / 2.0) + 1e-12);
      }
    }
  }
}
