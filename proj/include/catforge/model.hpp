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

// Device parameters and the qubit-cavity Hamiltonians.
//
// Natural units hbar = e = 1; flux inputs are in units of the flux quantum.
// Assumed operating regime (not modelled): superconducting gap >> E_ch >>
// E_J >> k_B T, so the box reduces to the two charge states |g>, |e>.

#include <complex>
#include <optional>

#include "catforge/fock.hpp"

namespace catforge {

/// Device inputs. Either give e_ch / n_g / gamma / beta directly or supply the
/// raw circuit quantities they derive from, never both. Unset values fall back
/// to the reference device (omega = 1, E_J = 0.01, n_g = 1/2, gamma = 0.2,
/// beta = 0.3).
struct DeviceParams {
  std::optional<double> e_ch;    ///< single-electron charging energy
  std::optional<double> e_j;     ///< Josephson energy
  std::optional<double> n_g;     ///< dimensionless gate charge
  std::optional<double> gamma;   ///< pi * Phi_c / Phi_0
  std::optional<Complex> beta;   ///< pi * eta / Phi_0

  std::optional<double> c_g;     ///< gate capacitance
  std::optional<double> c_j;     ///< junction capacitance
  std::optional<double> v_g;     ///< gate voltage
  std::optional<double> phi_c;   ///< classical flux / Phi_0
  std::optional<Complex> eta;    ///< mode-function flux amplitude / Phi_0
};

/// Fully resolved device, every field concrete.
struct Device {
  double e_ch = 0.25;
  double e_j = 0.01;
  double n_g = 0.5;
  double gamma = 0.2;
  Complex beta = 0.3;
};

struct DerivedParams {
  Device device;
  double omega = 1.0;        ///< 4 E_ch
  double e_z = 0.0;          ///< -2 E_ch (1 - 2 n_g)
  Complex alpha;             ///< i beta^* / 2
  double regime_ratio = 0;   ///< omega |beta| / E_J, +inf when E_J = 0
};

struct RegimeReport {
  double ratio = 0.0;
  bool beta_ok = false;   ///< |beta| >= 0.25
  bool jc_valid = false;  ///< ratio >= threshold
};

inline constexpr double kDefaultRegimeThreshold = 10.0;

/// Applies the raw-input derivations and validity checks. Throws ConfigError
/// on conflicting inputs, e_ch <= 0, e_j < 0 or |beta| >= 1.
Device resolve_device(const DeviceParams& p);

DerivedParams derive_params(const DeviceParams& p);
DerivedParams derive_params(const Device& device);

RegimeReport regime_check(const DerivedParams& d,
                          double threshold = kDefaultRegimeThreshold);

/// omega a^dag a + E_z sigma_z - E_J sigma_x cos(gamma + beta a + beta^* a^dag)
Operator build_full_hamiltonian(const DerivedParams& d,
                                const TruncationConfig& cfg);

/// D(alpha) e^{i gamma / 2}
Operator build_gauge_displacement(const DerivedParams& d,
                                  const TruncationConfig& cfg);

/// T = (1/sqrt2) [[-D^dag, D], [D^dag, D]] in the (|e>, |g>) block basis.
Operator build_T(const DerivedParams& d, const TruncationConfig& cfg);

/// Same T assembled from its Pauli-operator expansion
///   (1/sqrt2){ -(D^dag - D)/2 I - (D^dag + D)/2 sigma_z
///              + D sigma_plus + D^dag sigma_minus }.
Operator build_T_pauli(const DerivedParams& d, const TruncationConfig& cfg);

/// Exact transformed Hamiltonian T H T^dag written out term by term. The
/// constant (|beta|^2 / 4) omega I is added when include_constant is set.
Operator build_HT_direct(const DerivedParams& d, const TruncationConfig& cfg,
                         bool include_constant = true);

/// Jaynes-Cummings-type approximation
///   omega a^dag a + i (omega/2) [(beta a - beta^* a^dag) + 2i E_z/omega] sigma_x.
Operator build_HT_jc(const DerivedParams& d, const TruncationConfig& cfg);

}  // namespace catforge
