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

// Propagators and the cat-state preparation protocol: start from
// |0> (|e> + |g>)/sqrt2, evolve, rotate the qubit with R, then measure the
// charge state to collapse the field onto one of the two cats.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "catforge/fock.hpp"
#include "catforge/model.hpp"

namespace catforge {

enum class PropagatorKind {
  exact_full,         ///< exp(-i H t) of the full nonlinear Hamiltonian
  exact_transformed,  ///< T^dag exp(-i H_T t) T with the exact H_T
  exact_jc,           ///< T^dag exp(-i H_T,jc t) T with the JC-type H_T
  analytic,           ///< closed-form product of free rotation and D(beta~)
};

inline constexpr std::array<PropagatorKind, 4> kAllPropagatorKinds = {
    PropagatorKind::exact_full, PropagatorKind::exact_transformed,
    PropagatorKind::exact_jc, PropagatorKind::analytic};

std::string to_string(PropagatorKind kind);
/// Throws ConfigError on an unknown name.
PropagatorKind parse_propagator_kind(std::string_view name);

enum class QubitOutcome { e, g };
enum class CatSign { plus, minus };

std::string to_string(QubitOutcome outcome);

/// Probabilities at or below this are treated as an impossible outcome.
inline constexpr double kZeroProbability = 1e-20;

struct CatPair {
  StateVector phi_plus;   ///< field state after measuring |e>
  StateVector phi_minus;  ///< field state after measuring |g>
  double prob_e = 0.0;
  double prob_g = 0.0;
  Complex beta_tilde;
  double t = 0.0;
  double phase_theta = 0.0;  ///< E_z t
};

/// beta~ = i omega^2 beta t^2 / 4
Complex beta_tilde(const DerivedParams& d, double t);

/// exp(-i H t); H must be tagged Hermitian.
Operator propagator_exact(const Operator& h, double t);

/// (I (x) e^{-i omega a^dag a t}) blockdiag(D(beta~) e^{-i E_z t},
/// D^dag(beta~) e^{+i E_z t}).
Operator propagator_analytic(const DerivedParams& d, double t,
                             const TruncationConfig& cfg,
                             Warnings* warnings = nullptr);

/// T^dag e^{A} e^{B} e^{-[A,B]/2} T with A = -i omega a^dag a t and B the
/// remaining JC-type term times -i t: the factorized form before the
/// block-diagonal simplification. Used to measure the factorization residual
/// by itself.
Operator propagator_bch_factorized(const DerivedParams& d, double t,
                                   const TruncationConfig& cfg);

/// Dispatch over the four constructions. Unitary on the 2 n_levels space.
Operator propagator(PropagatorKind kind, const DerivedParams& d,
                    const TruncationConfig& cfg, double t,
                    Warnings* warnings = nullptr);

/// |0> (x) (|e> + |g>)/sqrt2
StateVector initial_state(const TruncationConfig& cfg);

/// R = (1/sqrt2) [[1, 1], [-1, 1]]: |e> -> (|e> - |g>)/sqrt2,
/// |g> -> (|e> + |g>)/sqrt2.
Operator rotation_R();

/// (R (x) I_field) psi
StateVector apply_R(const StateVector& psi);

/// Unnormalized field block <q|psi> of a full-space state.
StateVector qubit_block(const StateVector& psi, QubitOutcome outcome);

struct Projection {
  StateVector field;
  double probability = 0.0;
};

/// Collapse onto the given qubit outcome. Throws Error naming the outcome when
/// its probability is zero.
Projection project_qubit(const StateVector& psi, QubitOutcome outcome);

/// Both outcomes at once without failing on an impossible one.
struct QubitMeasurement {
  double prob_e = 0.0;
  double prob_g = 0.0;
  std::optional<StateVector> field_e;
  std::optional<StateVector> field_g;
};

QubitMeasurement measure_qubit(const StateVector& psi);

/// U(t) applied to the initial state.
StateVector evolve_initial_state(PropagatorKind kind, const DerivedParams& d,
                                 const TruncationConfig& cfg, double t,
                                 Warnings* warnings = nullptr);

/// Full protocol: evolve, rotate, measure both outcomes.
CatPair make_cat(const DerivedParams& d, const TruncationConfig& cfg, double t,
                 PropagatorKind kind, Warnings* warnings = nullptr);

/// [2 +- 2 cos(2 theta) e^{-2|mu|^2}]^{-1/2}
double ideal_cat_normalization(Complex mu, double theta, CatSign sign);

/// N (e^{-i theta}|mu> +- e^{+i theta}|-mu>). Throws Error when the two
/// branches cancel.
StateVector ideal_cat(Complex mu, double theta, CatSign sign,
                      const TruncationConfig& cfg, Warnings* warnings = nullptr);

}  // namespace catforge
