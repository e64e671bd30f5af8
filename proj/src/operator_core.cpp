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

#include "tdsim/operator_core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "tdsim/hamiltonian.hpp"

namespace tdsim {

namespace {

void require_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream msg;
    msg << who << ": expected a nonempty square matrix, got " << m.rows() << "x"
        << m.cols();
    throw std::invalid_argument(msg.str());
  }
}

// max|A - A^dag| measured against the matrix scale; max|A_ij| is a lower
// bound on the spectral norm, so this is at least as strict as the nominal
// relative-to-spectral-norm tolerance.
void require_hermitian(const Matrix& m, double rel_tol, const char* who) {
  require_square(m, who);
  const double defect = max_abs(m - m.adjoint());
  const double scale = std::max(1.0, max_abs(m));
  if (defect > rel_tol * scale) {
    std::ostringstream msg;
    msg << who << ": matrix is not Hermitian: max|A - A^dag| = " << defect
        << " exceeds " << rel_tol << " * scale (scale = " << scale << ")";
    throw std::invalid_argument(msg.str());
  }
}

Matrix unitarize(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

double spectral_norm(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  // sqrt of the top eigenvalue of M^dag M; cheaper than a full SVD.
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

double max_abs(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix entries) : entries_(std::move(entries)) {
  require_hermitian(entries_, 1e-12, "HermitianOperator");
}

UnitaryOperator::UnitaryOperator(Matrix entries) : entries_(std::move(entries)) {
  require_square(entries_, "UnitaryOperator");
  const Matrix gram = entries_.adjoint() * entries_;
  const double defect = max_abs(gram - Matrix::Identity(entries_.rows(), entries_.cols()));
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "UnitaryOperator: max|U^dag U - I| = " << defect << " exceeds 1e-10";
    throw std::invalid_argument(msg.str());
  }
}

UnitaryOperator UnitaryOperator::identity(int dim) {
  return UnitaryOperator(Matrix::Identity(dim, dim));
}

QuantumState::QuantumState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0)
    throw std::invalid_argument("QuantumState: empty amplitude vector");
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "QuantumState: norm " << norm << " deviates from 1 by more than 1e-12";
    throw std::invalid_argument(msg.str());
  }
}

DensityOperator::DensityOperator(Matrix entries) : entries_(std::move(entries)) {
  require_hermitian(entries_, 1e-12, "DensityOperator");
  const double trace = entries_.trace().real();
  if (std::abs(trace - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "DensityOperator: trace " << trace << " deviates from 1 by more than 1e-10";
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-10) {
    std::ostringstream msg;
    msg << "DensityOperator: eigenvalue " << min_eig << " below -1e-10";
    throw std::invalid_argument(msg.str());
  }
}

DensityOperator DensityOperator::pure(const QuantumState& psi) {
  return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
}

UnitaryOperator herm_expm(const HermitianOperator& h, double theta) {
  HermitianExpCache cache(h);
  return UnitaryOperator(cache.unitary(theta));
}

HermitianExpCache::HermitianExpCache(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("HermitianExpCache: eigendecomposition failed");
  vectors_ = es.eigenvectors();
  values_ = es.eigenvalues();
}

Matrix HermitianExpCache::unitary(double theta) const {
  const int n = dim();
  Vector phases(n);
  for (int i = 0; i < n; ++i)
    phases(i) = std::exp(Complex(0.0, -theta * values_(i)));
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Matrix midpoint_product(const TimeDepHamiltonian& h, double t0, double t1, int n_steps) {
  const int dim = h.dim();
  const double step = (t1 - t0) / n_steps;
  Matrix result = Matrix::Identity(dim, dim);
  for (int j = 0; j < n_steps; ++j) {
    const double mid = t0 + (j + 0.5) * step;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.evaluate_raw(mid));
    Vector phases(dim);
    for (int i = 0; i < dim; ++i)
      phases(i) = std::exp(Complex(0.0, -step * es.eigenvalues()(i)));
    result = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * result;
    // Long products drift off the unitary manifold linearly in the step
    // count; periodic polar projection keeps the drift at the random-walk
    // level so refinement floors stay near machine precision.
    if ((j & 1023) == 1023) result = unitarize(result);
  }
  return result;
}

UnitaryOperator reference_propagator(const TimeDepHamiltonian& h, double t0, double t1,
                                     double tol, PropagatorDiagnostics* diag) {
  if (t0 > t1) throw std::invalid_argument("reference_propagator: need t0 <= t1");
  if (!(tol > 0.0)) throw std::invalid_argument("reference_propagator: need tol > 0");
  if (t0 == t1) return UnitaryOperator::identity(h.dim());

  constexpr int kMaxSteps = 1 << 22;
  int n = 8;
  Matrix coarse = midpoint_product(h, t0, t1, n);
  Matrix fine = midpoint_product(h, t0, t1, 2 * n);
  Matrix extrapolant = (4.0 * fine - coarse) / 3.0;
  double prev_diff = -1.0, last_diff = -1.0;

  while (2 * n <= kMaxSteps) {
    n *= 2;
    Matrix finer = midpoint_product(h, t0, t1, 2 * n);
    Matrix next = (4.0 * finer - fine) / 3.0;
    const double mid_diff = spectral_norm(finer - fine);
    const double ext_diff = spectral_norm(next - extrapolant);
    if (diag) {
      diag->steps.push_back(n);
      diag->midpoint_diffs.push_back(mid_diff);
      diag->extrapolant_diffs.push_back(ext_diff);
    }
    if (ext_diff < tol) return UnitaryOperator(unitarize(next));
    prev_diff = last_diff;
    last_diff = ext_diff;
    fine = std::move(finer);
    extrapolant = std::move(next);
  }
  std::ostringstream msg;
  msg << "reference_propagator: no convergence to " << tol << " within " << kMaxSteps
      << " substeps; last two refinement errors " << prev_diff << ", " << last_diff;
  throw std::runtime_error(msg.str());
}

double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix() - b.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double pure_state_distance(const QuantumState& a, const QuantumState& b) {
  return trace_distance(DensityOperator::pure(a), DensityOperator::pure(b));
}

double fidelity(const QuantumState& psi, const DensityOperator& rho) {
  if (psi.dim() != rho.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const Complex value = psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes();
  return value.real();
}

}  // namespace tdsim
