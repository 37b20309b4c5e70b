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

#include "catforge/fock.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <utility>

#include <unsupported/Eigen/MatrixFunctions>

namespace catforge {

namespace detail {
void warn(Warnings* sink, std::string message) {
  if (sink != nullptr) {
    sink->push_back(std::move(message));
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}
}  // namespace detail

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

void TruncationConfig::validate() const {
  if (n_levels < 2) {
    throw ConfigError("n_levels must be at least 2, got " +
                      std::to_string(n_levels));
  }
  if (!(leakage_fraction > 0.0 && leakage_fraction < 1.0)) {
    throw ConfigError("leakage_fraction must lie strictly between 0 and 1");
  }
}

int TruncationConfig::interior_levels() const {
  const int interior = static_cast<int>(
      std::ceil((1.0 - leakage_fraction) * static_cast<double>(n_levels) - 1e-9));
  return std::clamp(interior, 1, n_levels - 1);
}

std::string to_string(OperatorRole role) {
  switch (role) {
    case OperatorRole::hermitian:
      return "hermitian";
    case OperatorRole::unitary:
      return "unitary";
    case OperatorRole::general:
      return "general";
  }
  return "general";
}

// Operator ------------------------------------------------------------------

Operator::Operator(Matrix entries, OperatorRole role)
    : entries_(std::move(entries)), role_(role) {
  if (entries_.rows() != entries_.cols()) {
    throw Error("operator matrix must be square");
  }
}

Operator Operator::identity(int dim) {
  return Operator(Matrix::Identity(dim, dim), OperatorRole::unitary);
}

Operator Operator::zero(int dim) {
  return Operator(Matrix::Zero(dim, dim), OperatorRole::hermitian);
}

double Operator::hermiticity_defect() const {
  return max_abs(entries_ - entries_.adjoint());
}

double Operator::unitarity_defect() const {
  return max_abs(entries_.adjoint() * entries_ -
                 Matrix::Identity(dim(), dim()));
}

bool Operator::satisfies_role() const {
  switch (role_) {
    case OperatorRole::hermitian:
      return hermiticity_defect() < kHermitianTolerance;
    case OperatorRole::unitary:
      return unitarity_defect() < kUnitaryTolerance;
    case OperatorRole::general:
      return true;
  }
  return true;
}

Operator Operator::adjoint() const {
  return Operator(entries_.adjoint(), role_);
}

Operator Operator::with_role(OperatorRole role) const {
  return Operator(entries_, role);
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error("operator dimension mismatch");
  const bool unitary = lhs.role() == OperatorRole::unitary &&
                       rhs.role() == OperatorRole::unitary;
  return Operator(lhs.matrix() * rhs.matrix(),
                  unitary ? OperatorRole::unitary : OperatorRole::general);
}

Operator operator+(const Operator& lhs, const Operator& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error("operator dimension mismatch");
  return Operator(lhs.matrix() + rhs.matrix());
}

Operator operator-(const Operator& lhs, const Operator& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error("operator dimension mismatch");
  return Operator(lhs.matrix() - rhs.matrix());
}

Operator operator*(Complex scale, const Operator& op) {
  return Operator(scale * op.matrix());
}

// StateVector ---------------------------------------------------------------

StateVector::StateVector(Vector amplitudes, double truncation_deficit)
    : amplitudes_(std::move(amplitudes)), deficit_(truncation_deficit) {}

StateVector StateVector::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw Error("basis index out of range");
  Vector v = Vector::Zero(dim);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error("cannot normalize the zero vector");
  return StateVector(amplitudes_ / n, deficit_);
}

StateVector operator*(const Operator& op, const StateVector& psi) {
  if (op.dim() != psi.dim()) throw Error("operator/state dimension mismatch");
  return StateVector(op.matrix() * psi.amplitudes(), psi.truncation_deficit());
}

Complex inner_product(const StateVector& lhs, const StateVector& rhs) {
  if (lhs.dim() != rhs.dim()) throw Error("state dimension mismatch");
  return lhs.amplitudes().dot(rhs.amplitudes());
}

// Mode and qubit operators --------------------------------------------------

Operator make_annihilation(const TruncationConfig& cfg) {
  cfg.validate();
  const int n = cfg.n_levels;
  Matrix a = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return Operator(std::move(a));
}

Operator make_creation(const TruncationConfig& cfg) {
  return make_annihilation(cfg).adjoint();
}

Operator make_number(const TruncationConfig& cfg) {
  cfg.validate();
  Matrix n = Matrix::Zero(cfg.n_levels, cfg.n_levels);
  for (int k = 0; k < cfg.n_levels; ++k) n(k, k) = static_cast<double>(k);
  return Operator(std::move(n), OperatorRole::hermitian);
}

Operator qubit_identity() { return Operator::identity(2); }

Operator sigma_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return Operator(m, OperatorRole::hermitian);
}

Operator sigma_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return Operator(m, OperatorRole::hermitian);
}

Operator sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return Operator(m);
}

Operator sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1.0;
  return Operator(m);
}

Matrix commutator(const Matrix& lhs, const Matrix& rhs) {
  return lhs * rhs - rhs * lhs;
}

// Matrix functions ----------------------------------------------------------

Matrix hermitian_function(const Operator& h,
                          const std::function<Complex(double)>& f) {
  if (h.role() != OperatorRole::hermitian) {
    throw Error("matrix function requires a Hermitian-tagged operator, got " +
                to_string(h.role()));
  }
  const double defect = h.hermiticity_defect();
  if (!(defect < kHermitianTolerance)) {
    throw Error("operator claimed Hermitian has Hermiticity defect " +
                format_double(defect));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition failed (Hermiticity defect " +
                format_double(defect) + ")");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  const Matrix& vecs = solver.eigenvectors();
  Vector fvals(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k) fvals[k] = f(evals[k]);
  return vecs * fvals.asDiagonal() * vecs.adjoint();
}

Operator evolution_operator(const Operator& h, double t) {
  const Complex minus_it(0.0, -t);
  return Operator(
      hermitian_function(h, [minus_it](double e) { return std::exp(minus_it * e); }),
      OperatorRole::unitary);
}

Operator matrix_exponential(const Operator& m) {
  const Matrix& mm = m.matrix();
  if (max_abs(mm + mm.adjoint()) < kHermitianTolerance) {
    // m = -iH with H = i m
    const Matrix h = Complex(0.0, 1.0) * mm;
    return evolution_operator(
        Operator(0.5 * (h + h.adjoint()), OperatorRole::hermitian), 1.0);
  }
  if (m.role() == OperatorRole::hermitian ||
      max_abs(mm - mm.adjoint()) < kHermitianTolerance) {
    const Operator h(0.5 * (mm + mm.adjoint()), OperatorRole::hermitian);
    return Operator(
        hermitian_function(h, [](double e) { return Complex(std::exp(e)); }),
        OperatorRole::hermitian);
  }
  if (!mm.allFinite()) throw Error("matrix_exponential: non-finite entries");
  Matrix result = mm.exp();
  return Operator(std::move(result));
}

Operator operator_cosine(const Operator& m) {
  Matrix c = hermitian_function(m, [](double e) { return Complex(std::cos(e)); });
  return Operator(std::move(c), OperatorRole::hermitian);
}

Operator operator_sine(const Operator& m) {
  Matrix s = hermitian_function(m, [](double e) { return Complex(std::sin(e)); });
  return Operator(std::move(s), OperatorRole::hermitian);
}

// Displacements -------------------------------------------------------------

bool within_displacement_guard(Complex alpha, const TruncationConfig& cfg) {
  return std::norm(alpha) <= static_cast<double>(cfg.n_levels) / 4.0;
}

Operator displacement(Complex alpha, const TruncationConfig& cfg,
                      Warnings* warnings) {
  if (!within_displacement_guard(alpha, cfg)) {
    std::ostringstream os;
    os << "displacement |alpha|^2 = " << std::norm(alpha)
       << " exceeds n_levels/4 = " << cfg.n_levels / 4.0
       << "; truncation edge may corrupt the result";
    detail::warn(warnings, os.str());
  }
  const Operator a = make_annihilation(cfg);
  // D = exp(G), G = alpha a^dag - alpha^* a = -iH with H = iG Hermitian.
  const Matrix g = alpha * a.matrix().adjoint() - std::conj(alpha) * a.matrix();
  const Matrix h = Complex(0.0, 1.0) * g;
  return evolution_operator(
      Operator(0.5 * (h + h.adjoint()), OperatorRole::hermitian), 1.0);
}

double coherent_tail_mass(Complex mu, int n_levels) {
  const double mean = std::norm(mu);
  if (mean == 0.0) return 0.0;
  const double log_mean = std::log(mean);
  double tail = 0.0;
  for (int n = n_levels;; ++n) {
    const double term =
        std::exp(-mean + n * log_mean - std::lgamma(static_cast<double>(n) + 1.0));
    tail += term;
    if (n > mean && (term < 1e-300 || term < tail * 1e-18)) break;
  }
  return std::min(tail, 1.0);
}

StateVector coherent_state(Complex mu, const TruncationConfig& cfg,
                           Warnings* warnings) {
  const Operator d = displacement(mu, cfg, warnings);
  const StateVector raw(d.matrix().col(0), coherent_tail_mass(mu, cfg.n_levels));
  return raw.normalized();
}

Operator tensor(const Operator& qubit_op, const Operator& field_op) {
  if (qubit_op.dim() != 2) {
    throw Error("tensor: qubit factor must be 2x2, got " +
                std::to_string(qubit_op.dim()));
  }
  const int n = field_op.dim();
  Matrix out(2 * n, 2 * n);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block(i * n, j * n, n, n) = qubit_op.matrix()(i, j) * field_op.matrix();
    }
  }
  OperatorRole role = OperatorRole::general;
  if (qubit_op.role() == field_op.role() &&
      qubit_op.role() != OperatorRole::general) {
    role = qubit_op.role();
  }
  return Operator(std::move(out), role);
}

}  // namespace catforge
