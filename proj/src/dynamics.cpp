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

#include "catforge/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace catforge {

namespace {

constexpr Complex kI(0.0, 1.0);

/// Closed-form squared norm of e^{-i theta}|mu> +- e^{i theta}|-mu>.
double cat_branch_norm2(Complex mu, double theta, CatSign sign) {
  const double s = sign == CatSign::plus ? 1.0 : -1.0;
  return 2.0 + s * 2.0 * std::cos(2.0 * theta) * std::exp(-2.0 * std::norm(mu));
}

Operator conjugate_by_T(const Operator& t_op, const Operator& inner) {
  return t_op.adjoint() * inner * t_op;
}

}  // namespace

std::string to_string(PropagatorKind kind) {
  switch (kind) {
    case PropagatorKind::exact_full:
      return "exact_full";
    case PropagatorKind::exact_transformed:
      return "exact_transformed";
    case PropagatorKind::exact_jc:
      return "exact_jc";
    case PropagatorKind::analytic:
      return "analytic";
  }
  return "analytic";
}

PropagatorKind parse_propagator_kind(std::string_view name) {
  for (PropagatorKind k : kAllPropagatorKinds) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown propagator kind '" + std::string(name) + "'");
}

std::string to_string(QubitOutcome outcome) {
  return outcome == QubitOutcome::e ? "e" : "g";
}

Complex beta_tilde(const DerivedParams& d, double t) {
  return kI * d.omega * d.omega * d.device.beta * t * t / 4.0;
}

Operator propagator_exact(const Operator& h, double t) {
  return evolution_operator(h, t);
}

Operator propagator_analytic(const DerivedParams& d, double t,
                             const TruncationConfig& cfg, Warnings* warnings) {
  const int n = cfg.n_levels;
  const Complex bt = beta_tilde(d, t);
  const Matrix disp = displacement(bt, cfg, warnings).matrix();

  Vector free_phase(n);
  for (int k = 0; k < n; ++k) free_phase[k] = std::exp(-kI * (d.omega * k * t));

  const Complex phase_e = std::exp(-kI * (d.e_z * t));
  const Complex phase_g = std::exp(kI * (d.e_z * t));

  Matrix u = Matrix::Zero(2 * n, 2 * n);
  u.topLeftCorner(n, n) = free_phase.asDiagonal() * disp * phase_e;
  u.bottomRightCorner(n, n) = free_phase.asDiagonal() * disp.adjoint() * phase_g;
  return Operator(std::move(u), OperatorRole::unitary);
}

Operator propagator_bch_factorized(const DerivedParams& d, double t,
                                   const TruncationConfig& cfg) {
  const Operator h_jc = build_HT_jc(d, cfg);
  const Operator h_free(d.omega * tensor(qubit_identity(), make_number(cfg)).matrix(),
                        OperatorRole::hermitian);
  const Operator h_coupling(h_jc.matrix() - h_free.matrix(), OperatorRole::hermitian);

  // A = -i H_free t, B = -i H_coupling t, -[A,B]/2 = (t^2/2)[H_free, H_coupling],
  // which is anti-Hermitian; write it as -i H_c with H_c = i (t^2/2)[., .].
  const Matrix comm = commutator(h_free.matrix(), h_coupling.matrix());
  Matrix h_c = kI * (t * t / 2.0) * comm;
  h_c = 0.5 * (h_c + h_c.adjoint());

  const Operator factorized = evolution_operator(h_free, t) *
                              evolution_operator(h_coupling, t) *
                              evolution_operator(Operator(h_c, OperatorRole::hermitian), 1.0);
  return conjugate_by_T(build_T(d, cfg), factorized);
}

Operator propagator(PropagatorKind kind, const DerivedParams& d,
                    const TruncationConfig& cfg, double t, Warnings* warnings) {
  switch (kind) {
    case PropagatorKind::exact_full:
      return propagator_exact(build_full_hamiltonian(d, cfg), t);
    case PropagatorKind::exact_transformed:
      return conjugate_by_T(build_T(d, cfg),
                            propagator_exact(build_HT_direct(d, cfg), t));
    case PropagatorKind::exact_jc:
      return conjugate_by_T(build_T(d, cfg),
                            propagator_exact(build_HT_jc(d, cfg), t));
    case PropagatorKind::analytic:
      return propagator_analytic(d, t, cfg, warnings);
  }
  throw Error("unhandled propagator kind");
}

StateVector initial_state(const TruncationConfig& cfg) {
  cfg.validate();
  Vector v = Vector::Zero(2 * cfg.n_levels);
  v[0] = 1.0 / std::sqrt(2.0);
  v[cfg.n_levels] = 1.0 / std::sqrt(2.0);
  return StateVector(std::move(v));
}

Operator rotation_R() {
  Matrix r(2, 2);
  r << 1.0, 1.0, -1.0, 1.0;
  return Operator(r / std::sqrt(2.0), OperatorRole::unitary);
}

StateVector apply_R(const StateVector& psi) {
  if (psi.dim() % 2 != 0) throw Error("apply_R expects a qubit (x) field state");
  const int n = psi.dim() / 2;
  const Matrix r = rotation_R().matrix();
  const auto e = psi.amplitudes().head(n);
  const auto g = psi.amplitudes().tail(n);
  Vector out(2 * n);
  out.head(n) = r(0, 0) * e + r(0, 1) * g;
  out.tail(n) = r(1, 0) * e + r(1, 1) * g;
  return StateVector(std::move(out), psi.truncation_deficit());
}

StateVector qubit_block(const StateVector& psi, QubitOutcome outcome) {
  if (psi.dim() % 2 != 0) throw Error("qubit_block expects a qubit (x) field state");
  const int n = psi.dim() / 2;
  const Vector block = outcome == QubitOutcome::e ? Vector(psi.amplitudes().head(n))
                                                  : Vector(psi.amplitudes().tail(n));
  return StateVector(block);
}

Projection project_qubit(const StateVector& psi, QubitOutcome outcome) {
  const StateVector block = qubit_block(psi, outcome);
  const double p = block.squared_norm();
  if (!(p > kZeroProbability)) {
    std::ostringstream os;
    os << "qubit outcome " << to_string(outcome) << " has zero probability (" << p << ")";
    throw Error(os.str());
  }
  return Projection{block.normalized(), p};
}

QubitMeasurement measure_qubit(const StateVector& psi) {
  QubitMeasurement m;
  const StateVector e = qubit_block(psi, QubitOutcome::e);
  const StateVector g = qubit_block(psi, QubitOutcome::g);
  m.prob_e = e.squared_norm();
  m.prob_g = g.squared_norm();
  if (m.prob_e > kZeroProbability) m.field_e = e.normalized();
  if (m.prob_g > kZeroProbability) m.field_g = g.normalized();
  return m;
}

StateVector evolve_initial_state(PropagatorKind kind, const DerivedParams& d,
                                 const TruncationConfig& cfg, double t,
                                 Warnings* warnings) {
  return propagator(kind, d, cfg, t, warnings) * initial_state(cfg);
}

CatPair make_cat(const DerivedParams& d, const TruncationConfig& cfg, double t,
                 PropagatorKind kind, Warnings* warnings) {
  if (kind == PropagatorKind::analytic && !regime_check(d).jc_valid) {
    std::ostringstream os;
    os << "analytic propagator used outside the JC regime (ratio "
       << d.regime_ratio << ")";
    detail::warn(warnings, os.str());
  }
  const StateVector rotated = apply_R(evolve_initial_state(kind, d, cfg, t, warnings));
  Projection plus = project_qubit(rotated, QubitOutcome::e);
  Projection minus = project_qubit(rotated, QubitOutcome::g);
  return CatPair{plus.field,       minus.field,      plus.probability,
                 minus.probability, beta_tilde(d, t), t,
                 d.e_z * t};
}

double ideal_cat_normalization(Complex mu, double theta, CatSign sign) {
  return 1.0 / std::sqrt(cat_branch_norm2(mu, theta, sign));
}

StateVector ideal_cat(Complex mu, double theta, CatSign sign,
                      const TruncationConfig& cfg, Warnings* warnings) {
  if (!(cat_branch_norm2(mu, theta, sign) > 1e-14)) {
    throw Error("ideal cat branches cancel: vanishing norm");
  }
  const StateVector plus_mu = coherent_state(mu, cfg, warnings);
  const StateVector minus_mu = coherent_state(-mu, cfg, warnings);
  const double s = sign == CatSign::plus ? 1.0 : -1.0;
  Vector v = std::exp(-kI * theta) * plus_mu.amplitudes() +
             s * std::exp(kI * theta) * minus_mu.amplitudes();
  return StateVector(std::move(v), plus_mu.truncation_deficit()).normalized();
}

}  // namespace catforge
