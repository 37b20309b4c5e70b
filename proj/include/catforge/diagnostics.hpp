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

// Observables and quality metrics on field states and propagators.

#include <span>

#include <Eigen/Dense>

#include "catforge/fock.hpp"

namespace catforge {

/// |<psi|phi>|^2
double fidelity(const StateVector& psi, const StateVector& phi);

/// <psi|a|psi> of a field-only state.
Complex expectation_a(const StateVector& field_state);

/// Wigner grid over phase-space coordinates with alpha = (x + i p)/sqrt2.
struct WignerGridSpec {
  double x_min = -4.0;
  double x_max = 4.0;
  double p_min = -4.0;
  double p_max = 4.0;
  int n_x = 121;
  int n_p = 121;

  /// Throws ConfigError for unordered bounds or fewer than 2 points per axis.
  void validate() const;
  double x(int i) const;
  double p(int j) const;
  double dx() const { return (x_max - x_min) / (n_x - 1); }
  double dp() const { return (p_max - p_min) / (n_p - 1); }
};

inline constexpr const char* kQuadratureConvention = "alpha = (x + i p) / sqrt(2)";

struct WignerGrid {
  WignerGridSpec spec;
  Eigen::MatrixXd values;  ///< values(i, j) at (x(i), p(j))

  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
  /// Riemann sum over the alpha plane, cell weight (dx/sqrt2)(dp/sqrt2).
  double integral() const;
};

/// W(alpha) at a single phase-space point, (2/pi) sum_n (-1)^n |<n|D^dag(alpha)|psi>|^2.
double wigner_point(const StateVector& field_state, Complex alpha);

WignerGrid wigner(const StateVector& field_state, const WignerGridSpec& spec = {},
                  Warnings* warnings = nullptr);

enum class ProjectorLayout {
  qubit_field,  ///< keep levels < rank inside both qubit blocks
  field,        ///< field-only operator
};

/// Max-entry norm of P (U1 - e^{i phi} U2) P, where P keeps Fock levels below
/// `rank` and phi aligns the largest-magnitude entry of P U1 P.
double propagator_discrepancy(const Operator& u1, const Operator& u2, int rank,
                              ProjectorLayout layout = ProjectorLayout::qubit_field);

/// Probability mass on the top leakage_fraction of Fock levels.
double truncation_leakage(const StateVector& field_state, const TruncationConfig& cfg);

/// Least-squares slope of log(y) against log(x). Needs at least two points,
/// all strictly positive.
double fit_power_law_exponent(std::span<const double> x, std::span<const double> y);

}  // namespace catforge
