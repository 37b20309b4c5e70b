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

// Truncated Fock-space linear algebra: operators, states and matrix functions
// on the qubit (x) cavity-mode space.
//
// Basis conventions used throughout the library:
//  * Fock states |0>, ..., |n_levels - 1>.
//  * Qubit basis ordered (|e>, |g>), so sigma_z = diag(+1, -1) and
//    sigma_plus = |e><g|.
//  * Composite states put the qubit factor outermost: index q * n_levels + n.

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "catforge/error.hpp"

namespace catforge {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Collects soft-guard warnings. Functions accepting a `Warnings*` write to
/// stderr when handed nullptr.
using Warnings = std::vector<std::string>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;

struct TruncationConfig {
  int n_levels = 64;
  /// Top fraction of levels treated as the truncation edge.
  double leakage_fraction = 0.1;

  /// Throws ConfigError when n_levels < 2 or leakage_fraction is not in (0, 1).
  void validate() const;

  /// Number of interior levels, ceil((1 - leakage_fraction) * n_levels),
  /// capped so at least one level is left on the edge.
  int interior_levels() const;
};

enum class OperatorRole { hermitian, unitary, general };

std::string to_string(OperatorRole role);

/// Dense square matrix with a declared role. The role is a claim checked on
/// demand with satisfies_role(); constructors never verify it.
class Operator {
 public:
  explicit Operator(Matrix entries, OperatorRole role = OperatorRole::general);

  static Operator identity(int dim);
  static Operator zero(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  OperatorRole role() const { return role_; }

  /// max_ij |M - M^dag|_ij
  double hermiticity_defect() const;
  /// max_ij |M^dag M - I|_ij
  double unitarity_defect() const;
  /// Hermitian tag within kHermitianTolerance, unitary tag within
  /// kUnitaryTolerance; general always passes.
  bool satisfies_role() const;

  Operator adjoint() const;
  Operator with_role(OperatorRole role) const;

 private:
  Matrix entries_;
  OperatorRole role_;
};

/// Product of two unitaries keeps the unitary tag; anything else is general.
Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator+(const Operator& lhs, const Operator& rhs);
Operator operator-(const Operator& lhs, const Operator& rhs);
Operator operator*(Complex scale, const Operator& op);

/// Complex amplitude vector. `truncation_deficit` carries the probability mass
/// a construction lost to the finite basis (zero unless documented otherwise).
class StateVector {
 public:
  explicit StateVector(Vector amplitudes, double truncation_deficit = 0.0);

  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_[i]; }
  double squared_norm() const { return amplitudes_.squaredNorm(); }
  double norm() const { return amplitudes_.norm(); }
  double truncation_deficit() const { return deficit_; }

  /// Throws Error for the zero vector.
  StateVector normalized() const;

 private:
  Vector amplitudes_;
  double deficit_;
};

StateVector operator*(const Operator& op, const StateVector& psi);

/// <lhs|rhs>
Complex inner_product(const StateVector& lhs, const StateVector& rhs);

// Mode operators ------------------------------------------------------------

/// <n-1|a|n> = sqrt(n).
Operator make_annihilation(const TruncationConfig& cfg);
Operator make_creation(const TruncationConfig& cfg);
/// a^dag a, exactly diag(0, 1, ..., N-1).
Operator make_number(const TruncationConfig& cfg);

// Qubit operators in the (|e>, |g>) basis -----------------------------------

Operator qubit_identity();
Operator sigma_z();
Operator sigma_x();
/// |e><g|
Operator sigma_plus();
/// |g><e|
Operator sigma_minus();

Matrix commutator(const Matrix& lhs, const Matrix& rhs);

// Matrix functions ----------------------------------------------------------

/// V f(L) V^dag for a Hermitian-tagged `h` with eigendecomposition V L V^dag.
/// Throws Error if `h` is not tagged Hermitian, if its Hermiticity defect
/// exceeds kHermitianTolerance, or if the eigensolver fails.
Matrix hermitian_function(const Operator& h,
                          const std::function<Complex(double)>& f);

/// exp(-i h t) through the eigendecomposition of h; tagged unitary.
Operator evolution_operator(const Operator& h, double t);

/// exp(m). Anti-Hermitian input (m = -iH) is routed through the
/// eigendecomposition of H and tagged unitary; Hermitian input goes through
/// its own eigendecomposition and is tagged Hermitian; anything else uses a
/// Pade scaling-and-squaring exponential and is tagged general.
Operator matrix_exponential(const Operator& m);

/// cos(m) and sin(m) of a Hermitian-tagged argument; results tagged Hermitian.
Operator operator_cosine(const Operator& m);
Operator operator_sine(const Operator& m);

// Displacements and coherent states ----------------------------------------

/// |alpha|^2 <= n_levels / 4.
bool within_displacement_guard(Complex alpha, const TruncationConfig& cfg);

/// D(alpha) = exp(alpha a^dag - alpha^* a), tagged unitary. A guard violation
/// is reported as a warning.
Operator displacement(Complex alpha, const TruncationConfig& cfg,
                      Warnings* warnings = nullptr);

/// Poisson mass of |mu> above the truncated basis,
/// sum_{n >= N} e^{-|mu|^2} |mu|^{2n} / n!.
double coherent_tail_mass(Complex mu, int n_levels);

/// D(mu)|0>, renormalized. truncation_deficit() reports coherent_tail_mass.
StateVector coherent_state(Complex mu, const TruncationConfig& cfg,
                           Warnings* warnings = nullptr);

/// Kronecker product with the 2x2 qubit factor outermost.
Operator tensor(const Operator& qubit_op, const Operator& field_op);

namespace detail {
void warn(Warnings* sink, std::string message);
}

}  // namespace catforge
