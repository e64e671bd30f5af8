// Copyright 2026 The tdsim developers
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

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace tdsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class TimeDepHamiltonian;

/// Largest singular value.
double spectral_norm(const Matrix& m);

double max_abs(const Matrix& m);

/// Dense Hermitian matrix. Construction rejects inputs whose anti-Hermitian
/// part exceeds 1e-12 relative to the matrix scale.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// Dense unitary matrix; construction checks U^dag U = I to 1e-10 per entry.
class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix entries);

  static UnitaryOperator identity(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// Normalized state vector (unit Euclidean norm to 1e-12).
class QuantumState {
 public:
  explicit QuantumState(Vector amplitudes);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive-semidefinite matrix (eigenvalues allowed
/// down to -1e-10 to absorb round-off).
class DensityOperator {
 public:
  explicit DensityOperator(Matrix entries);

  static DensityOperator pure(const QuantumState& psi);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }

 private:
  Matrix entries_;
};

/// exp(-i theta H) via eigendecomposition of the Hermitian generator.
UnitaryOperator herm_expm(const HermitianOperator& h, double theta);

/// Cached eigendecomposition of a Hermitian operator, for repeated
/// exponentials of the same generator with varying angles.
class HermitianExpCache {
 public:
  explicit HermitianExpCache(const HermitianOperator& h);

  int dim() const { return static_cast<int>(values_.size()); }
  /// exp(-i theta H)
  Matrix unitary(double theta) const;

 private:
  Matrix vectors_;
  Eigen::VectorXd values_;
};

/// Convergence trace of the reference propagator, for diagnostics and tests.
struct PropagatorDiagnostics {
  std::vector<int> steps;                 // midpoint substep counts per level
  std::vector<double> midpoint_diffs;     // |U_{2N} - U_N|_2 per level
  std::vector<double> extrapolant_diffs;  // |R_k - R_{k-1}|_2 per level
};

/// One pass of the composite exponential-midpoint integrator with N substeps:
/// product over j of exp(-i h H(t0 + (j + 1/2) h)), h = (t1 - t0)/N.
Matrix midpoint_product(const TimeDepHamiltonian& h, double t0, double t1, int n_steps);

/// Ground-truth time-ordered propagator over [t0, t1]: midpoint sub-stepping
/// with step halving, accepted once successive Richardson extrapolants of the
/// halving pair agree to tol in spectral norm; the accepted extrapolant is
/// projected back to the unitary manifold. Throws (with the last two
/// refinement errors) if the step-count ceiling is hit first.
UnitaryOperator reference_propagator(const TimeDepHamiltonian& h, double t0, double t1,
                                     double tol, PropagatorDiagnostics* diag = nullptr);

/// Schatten-1 norm of a - b. No 1/2 prefactor: orthogonal pure states are at
/// distance 2.
double trace_distance(const DensityOperator& a, const DensityOperator& b);

/// Trace distance between the projectors onto two pure states.
double pure_state_distance(const QuantumState& a, const QuantumState& b);

/// <psi| rho |psi>
double fidelity(const QuantumState& psi, const DensityOperator& rho);

}  // namespace tdsim
