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

#include "catforge/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace catforge {

namespace {

constexpr Complex kI(0.0, 1.0);

Operator hermitian(Matrix m) {
  return Operator(std::move(m), OperatorRole::hermitian);
}

/// beta a + beta^* a^dag
Matrix quadrature(Complex beta, const TruncationConfig& cfg) {
  const Matrix a = make_annihilation(cfg).matrix();
  return beta * a + std::conj(beta) * a.adjoint();
}

}  // namespace

Device resolve_device(const DeviceParams& p) {
  Device dev;

  if (p.c_j.has_value() || (p.c_g.has_value() && !p.v_g.has_value())) {
    if (p.e_ch.has_value()) {
      throw ConfigError("e_ch given together with raw capacitances c_g/c_j");
    }
    if (!p.c_g.has_value() || !p.c_j.has_value()) {
      throw ConfigError("deriving e_ch needs both c_g and c_j");
    }
    const double c_total = *p.c_g + 2.0 * *p.c_j;
    if (!(c_total > 0.0)) throw ConfigError("c_g + 2 c_j must be positive");
    dev.e_ch = 1.0 / (2.0 * c_total);
  } else if (p.e_ch.has_value()) {
    dev.e_ch = *p.e_ch;
  }

  if (p.v_g.has_value()) {
    if (p.n_g.has_value()) {
      throw ConfigError("n_g given together with raw gate voltage v_g");
    }
    if (!p.c_g.has_value()) throw ConfigError("deriving n_g from v_g needs c_g");
    dev.n_g = *p.c_g * *p.v_g / 2.0;
  } else if (p.n_g.has_value()) {
    dev.n_g = *p.n_g;
  }

  if (p.phi_c.has_value()) {
    if (p.gamma.has_value()) {
      throw ConfigError("gamma given together with raw flux phi_c");
    }
    dev.gamma = std::numbers::pi * *p.phi_c;
  } else if (p.gamma.has_value()) {
    dev.gamma = *p.gamma;
  }

  if (p.eta.has_value()) {
    if (p.beta.has_value()) {
      throw ConfigError("beta given together with raw mode parameter eta");
    }
    dev.beta = std::numbers::pi * *p.eta;
  } else if (p.beta.has_value()) {
    dev.beta = *p.beta;
  }

  if (p.e_j.has_value()) dev.e_j = *p.e_j;

  if (!(dev.e_ch > 0.0)) throw ConfigError("e_ch must be positive");
  if (!(dev.e_j >= 0.0)) throw ConfigError("e_j must be non-negative");
  if (!(std::abs(dev.beta) < 1.0)) {
    throw ConfigError("|beta| must be below 1 (supported validity envelope)");
  }
  if (!std::isfinite(dev.n_g) || !std::isfinite(dev.gamma)) {
    throw ConfigError("n_g and gamma must be finite");
  }
  return dev;
}

DerivedParams derive_params(const DeviceParams& p) {
  return derive_params(resolve_device(p));
}

DerivedParams derive_params(const Device& device) {
  DerivedParams d;
  d.device = device;
  d.omega = 4.0 * device.e_ch;
  d.e_z = -2.0 * device.e_ch * (1.0 - 2.0 * device.n_g);
  d.alpha = kI * std::conj(device.beta) / 2.0;
  d.regime_ratio = device.e_j == 0.0
                       ? std::numeric_limits<double>::infinity()
                       : d.omega * std::abs(device.beta) / device.e_j;
  return d;
}

RegimeReport regime_check(const DerivedParams& d, double threshold) {
  RegimeReport r;
  r.ratio = d.regime_ratio;
  r.beta_ok = std::abs(d.device.beta) >= 0.25;
  r.jc_valid = r.ratio >= threshold;
  return r;
}

Operator build_full_hamiltonian(const DerivedParams& d,
                                const TruncationConfig& cfg) {
  const int n = cfg.n_levels;
  const Operator number = make_number(cfg);
  const Operator field_identity = Operator::identity(n);

  const Matrix arg = d.device.gamma * Matrix::Identity(n, n) +
                     quadrature(d.device.beta, cfg);
  const Operator cos_term = operator_cosine(hermitian(arg));

  Matrix h = d.omega * tensor(qubit_identity(), number).matrix() +
             d.e_z * tensor(sigma_z(), field_identity).matrix() -
             d.device.e_j * tensor(sigma_x(), cos_term).matrix();
  return hermitian(std::move(h));
}

Operator build_gauge_displacement(const DerivedParams& d,
                                  const TruncationConfig& cfg) {
  const Operator da = displacement(d.alpha, cfg);
  return Operator(std::exp(kI * (d.device.gamma / 2.0)) * da.matrix(),
                  OperatorRole::unitary);
}

Operator build_T(const DerivedParams& d, const TruncationConfig& cfg) {
  const int n = cfg.n_levels;
  const Matrix dm = build_gauge_displacement(d, cfg).matrix();
  const Matrix dd = dm.adjoint();
  Matrix t(2 * n, 2 * n);
  t.topLeftCorner(n, n) = -dd;
  t.topRightCorner(n, n) = dm;
  t.bottomLeftCorner(n, n) = dd;
  t.bottomRightCorner(n, n) = dm;
  t /= std::sqrt(2.0);
  return Operator(std::move(t), OperatorRole::unitary);
}

Operator build_T_pauli(const DerivedParams& d, const TruncationConfig& cfg) {
  const Operator dm = build_gauge_displacement(d, cfg);
  const Operator dd = dm.adjoint();
  const Matrix t = -0.5 * tensor(qubit_identity(), dd - dm).matrix() -
                   0.5 * tensor(sigma_z(), dd + dm).matrix() +
                   tensor(sigma_plus(), dm).matrix() +
                   tensor(sigma_minus(), dd).matrix();
  return Operator(t / std::sqrt(2.0), OperatorRole::unitary);
}

Operator build_HT_direct(const DerivedParams& d, const TruncationConfig& cfg,
                         bool include_constant) {
  const int n = cfg.n_levels;
  const Complex beta = d.device.beta;
  const double e_j = d.device.e_j;
  const Matrix a = make_annihilation(cfg).matrix();
  const Matrix id = Matrix::Identity(n, n);

  // 2(beta a + beta^* a^dag) + 2 gamma
  const Operator arg = hermitian(2.0 * quadrature(beta, cfg) + 2.0 * d.device.gamma * id);
  const Operator cos_term = operator_cosine(arg);
  const Operator sin_term = operator_sine(arg);

  // i/2 [omega (beta a - beta^* a^dag) + 2i E_z]
  const Matrix sx_coeff =
      0.5 * kI * (d.omega * (beta * a - std::conj(beta) * a.adjoint()) + 2.0 * kI * d.e_z * id);
  // -i (sigma_plus - sigma_minus)
  const Operator sy_like(-kI * (sigma_plus() - sigma_minus()).matrix(),
                         OperatorRole::hermitian);

  Matrix h = d.omega * tensor(qubit_identity(), make_number(cfg)).matrix() +
             0.5 * e_j * tensor(sigma_z(), Operator::identity(n)).matrix() +
             tensor(sigma_x(), Operator(sx_coeff)).matrix() +
             0.5 * e_j * tensor(sigma_z(), cos_term).matrix() +
             0.5 * e_j * tensor(sy_like, sin_term).matrix();
  if (include_constant) {
    h += d.omega * std::norm(beta) / 4.0 * Matrix::Identity(2 * n, 2 * n);
  }
  return hermitian(std::move(h));
}

Operator build_HT_jc(const DerivedParams& d, const TruncationConfig& cfg) {
  const int n = cfg.n_levels;
  const Complex beta = d.device.beta;
  const Matrix a = make_annihilation(cfg).matrix();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix sx_coeff =
      0.5 * kI * d.omega *
      ((beta * a - std::conj(beta) * a.adjoint()) + 2.0 * kI * (d.e_z / d.omega) * id);
  Matrix h = d.omega * tensor(qubit_identity(), make_number(cfg)).matrix() +
             tensor(sigma_x(), Operator(sx_coeff)).matrix();
  return hermitian(std::move(h));
}

}  // namespace catforge
