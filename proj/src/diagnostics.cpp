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

#include "catforge/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace catforge {

double fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.dim() != phi.dim()) throw Error("fidelity: state dimension mismatch");
  return std::norm(inner_product(psi, phi));
}

Complex expectation_a(const StateVector& field_state) {
  const Vector& v = field_state.amplitudes();
  Complex acc = 0.0;
  for (Eigen::Index n = 1; n < v.size(); ++n) {
    acc += std::conj(v[n - 1]) * std::sqrt(static_cast<double>(n)) * v[n];
  }
  return acc;
}

void WignerGridSpec::validate() const {
  if (!(x_min < x_max) || !(p_min < p_max)) {
    throw ConfigError("Wigner grid bounds must be ordered");
  }
  if (n_x < 2 || n_p < 2) throw ConfigError("Wigner grid needs at least 2 points per axis");
}

double WignerGridSpec::x(int i) const { return x_min + i * dx(); }
double WignerGridSpec::p(int j) const { return p_min + j * dp(); }

// d^2 alpha = d(Re alpha) d(Im alpha) = dx dp / 2
double WignerGrid::integral() const { return values.sum() * spec.dx() * spec.dp() / 2.0; }

namespace {

/// Displaced-parity evaluator. With alpha = r e^{i phi},
///   D(alpha) = U_phi exp(r (a^dag - a)) U_phi^dag,  U_phi = diag(e^{i n phi}),
/// so one eigendecomposition of i (a^dag - a) serves every grid point.
class DisplacedParity {
 public:
  explicit DisplacedParity(int n_levels) : n_(n_levels) {
    TruncationConfig cfg;
    cfg.n_levels = n_levels;
    const Matrix a = make_annihilation(cfg).matrix();
    // a^dag - a = -i K with K = i (a^dag - a) Hermitian
    Matrix k = Complex(0.0, 1.0) * (a.adjoint() - a);
    k = 0.5 * (k + k.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(k);
    if (solver.info() != Eigen::Success) throw Error("Wigner: eigendecomposition failed");
    evals_ = solver.eigenvalues();
    evecs_ = solver.eigenvectors();
  }

  double operator()(const Vector& psi, Complex alpha) const {
    const double r = std::abs(alpha);
    const double phi = std::arg(alpha);
    // D^dag(alpha) psi = U_phi exp(-r (a^dag - a)) U_phi^dag psi; the outer
    // U_phi is a phase per level and drops out of the parity sum.
    Vector w(n_);
    for (int k = 0; k < n_; ++k) w[k] = std::exp(Complex(0.0, -k * phi)) * psi[k];
    Vector c = evecs_.adjoint() * w;
    // exp(-r (a^dag - a)) = exp(-r (-i K)) = exp(i r K)
    for (int k = 0; k < n_; ++k) c[k] *= std::exp(Complex(0.0, r * evals_[k]));
    w = evecs_ * c;
    double acc = 0.0;
    for (int k = 0; k < n_; ++k) {
      const double pk = std::norm(w[k]);
      acc += (k % 2 == 0) ? pk : -pk;
    }
    return 2.0 / std::numbers::pi * acc;
  }

 private:
  int n_;
  Eigen::VectorXd evals_;
  Matrix evecs_;
};

}  // namespace

double wigner_point(const StateVector& field_state, Complex alpha) {
  return DisplacedParity(field_state.dim())(field_state.amplitudes(), alpha);
}

WignerGrid wigner(const StateVector& field_state, const WignerGridSpec& spec,
                  Warnings* warnings) {
  spec.validate();
  TruncationConfig cfg;
  cfg.n_levels = field_state.dim();
  const double corner_x = std::max(std::abs(spec.x_min), std::abs(spec.x_max));
  const double corner_p = std::max(std::abs(spec.p_min), std::abs(spec.p_max));
  const Complex corner(corner_x / std::sqrt(2.0), corner_p / std::sqrt(2.0));
  if (!within_displacement_guard(corner, cfg)) {
    std::ostringstream os;
    os << "Wigner grid reaches |alpha|^2 = " << std::norm(corner)
       << " beyond n_levels/4 = " << cfg.n_levels / 4.0;
    detail::warn(warnings, os.str());
  }

  const DisplacedParity parity(field_state.dim());
  WignerGrid grid{spec, Eigen::MatrixXd(spec.n_x, spec.n_p)};
  for (int i = 0; i < spec.n_x; ++i) {
    for (int j = 0; j < spec.n_p; ++j) {
      const Complex alpha(spec.x(i) / std::sqrt(2.0), spec.p(j) / std::sqrt(2.0));
      grid.values(i, j) = parity(field_state.amplitudes(), alpha);
    }
  }
  return grid;
}

double propagator_discrepancy(const Operator& u1, const Operator& u2, int rank,
                              ProjectorLayout layout) {
  if (u1.dim() != u2.dim()) throw Error("propagator_discrepancy: dimension mismatch");
  if (rank < 1) throw Error("propagator_discrepancy: rank must be positive");

  std::vector<int> kept;
  const int dim = u1.dim();
  if (layout == ProjectorLayout::qubit_field) {
    if (dim % 2 != 0) throw Error("propagator_discrepancy: odd dimension for qubit (x) field");
    const int n = dim / 2;
    if (rank > n) throw Error("propagator_discrepancy: rank exceeds n_levels");
    for (int q = 0; q < 2; ++q) {
      for (int k = 0; k < rank; ++k) kept.push_back(q * n + k);
    }
  } else {
    if (rank > dim) throw Error("propagator_discrepancy: rank exceeds dimension");
    for (int k = 0; k < rank; ++k) kept.push_back(k);
  }

  const int m = static_cast<int>(kept.size());
  Matrix p1(m, m), p2(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      p1(i, j) = u1.matrix()(kept[i], kept[j]);
      p2(i, j) = u2.matrix()(kept[i], kept[j]);
    }
  }

  Eigen::Index ai = 0, aj = 0;
  p1.cwiseAbs().maxCoeff(&ai, &aj);
  Complex phase = 1.0;
  if (std::abs(p2(ai, aj)) > 0.0 && std::abs(p1(ai, aj)) > 0.0) {
    const Complex ratio = p1(ai, aj) / p2(ai, aj);
    phase = ratio / std::abs(ratio);
  }
  return (p1 - phase * p2).cwiseAbs().maxCoeff();
}

double truncation_leakage(const StateVector& field_state, const TruncationConfig& cfg) {
  cfg.validate();
  if (field_state.dim() != cfg.n_levels) {
    throw Error("truncation_leakage: state dimension differs from n_levels");
  }
  return field_state.amplitudes().tail(cfg.n_levels - cfg.interior_levels()).squaredNorm();
}

double fit_power_law_exponent(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error("power-law fit needs two or more paired points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw Error("power-law fit needs positive data");
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw Error("power-law fit: abscissae coincide");
  return (n * sxy - sx * sy) / denom;
}

}  // namespace catforge
