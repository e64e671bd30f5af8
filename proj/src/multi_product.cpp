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

#include "tdsim/multi_product.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tdsim {

MpfSpec mpf_coefficients(const std::vector<int>& k) {
  const int m = static_cast<int>(k.size());
  if (m == 0) throw std::invalid_argument("mpf_coefficients: empty k list");
  std::set<int> distinct(k.begin(), k.end());
  for (int kj : k)
    if (kj < 1) throw std::invalid_argument("mpf_coefficients: k_j must be positive");
  if (static_cast<int>(distinct.size()) != m)
    throw std::invalid_argument("mpf_coefficients: duplicate k_j makes the system singular");

  Eigen::MatrixXd system(m, m);
  for (int row = 0; row < m; ++row)
    for (int col = 0; col < m; ++col)
      system(row, col) = std::pow(double(k[col]), -2.0 * row);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(0) = 1.0;
  Eigen::VectorXd alpha = system.fullPivLu().solve(rhs);

  const double residual = (system * alpha - rhs).cwiseAbs().maxCoeff();
  if (residual > 1e-10) {
    std::ostringstream msg;
    msg << "mpf_coefficients: linear solve residual " << residual << " exceeds 1e-10";
    throw std::runtime_error(msg.str());
  }
  for (int j = 0; j < m; ++j) {
    double closed = 1.0;
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      closed *= double(k[j]) * k[j] / (double(k[j]) * k[j] - double(k[i]) * k[i]);
    }
    if (std::abs(closed - alpha(j)) > 1e-9 * std::max(1.0, std::abs(closed))) {
      std::ostringstream msg;
      msg << "mpf_coefficients: solve disagrees with the closed form at j=" << j << " ("
          << alpha(j) << " vs " << closed << ")";
      throw std::runtime_error(msg.str());
    }
  }

  MpfSpec spec;
  spec.k = k;
  spec.alpha.assign(alpha.data(), alpha.data() + m);
  spec.m = m;
  spec.kappa = alpha.cwiseAbs().sum();
  return spec;
}

Matrix midpoint_step_unitary(const TermPropagators& props, double t, double dt) {
  const int n = props.num_terms();
  const double mid = t + 0.5 * dt;
  Matrix result = Matrix::Identity(props.dim(), props.dim());
  for (int k = n - 1; k >= 0; --k) {
    const double theta = 0.5 * dt * props.hamiltonian().term(k).schedule.value(mid);
    result = props.term_unitary(k, theta) * result;
  }
  for (int k = 0; k < n; ++k) {
    const double theta = 0.5 * dt * props.hamiltonian().term(k).schedule.value(mid);
    result = props.term_unitary(k, theta) * result;
  }
  return result;
}

Matrix hdr2_step_unitary(const TermPropagators& props, double t, double dt) {
  const int n = props.num_terms();
  const double mid = t + 0.5 * dt;
  Matrix result = Matrix::Identity(props.dim(), props.dim());
  for (int k = n - 1; k >= 0; --k) {
    const double theta = props.hamiltonian().term(k).schedule.definite_integral(t, mid);
    result = props.term_unitary(k, theta) * result;
  }
  for (int k = 0; k < n; ++k) {
    const double theta =
        props.hamiltonian().term(k).schedule.definite_integral(mid, t + dt);
    result = props.term_unitary(k, theta) * result;
  }
  return result;
}

namespace {

template <typename BaseStep>
Matrix mpf_step(const TermPropagators& props, double t, double dt, const MpfSpec& spec,
                const BaseStep& base) {
  if (spec.k.empty() || spec.alpha.size() != spec.k.size())
    throw std::invalid_argument("mpf_step: malformed MpfSpec");
  Matrix sum = Matrix::Zero(props.dim(), props.dim());
  for (std::size_t j = 0; j < spec.k.size(); ++j) {
    const int kj = spec.k[j];
    const double sub = dt / kj;
    Matrix branch = Matrix::Identity(props.dim(), props.dim());
    for (int l = 0; l < kj; ++l)
      branch = base(props, t + l * sub, sub) * branch;
    sum += spec.alpha[j] * branch;
  }
  return sum;
}

}  // namespace

Matrix mpf_step_pointwise(const TermPropagators& props, double t, double dt,
                          const MpfSpec& spec) {
  return mpf_step(props, t, dt, spec, midpoint_step_unitary);
}

Matrix mpf_step_pointwise(const TimeDepHamiltonian& h, double t, double dt,
                          const MpfSpec& spec) {
  TermPropagators props(h);
  return mpf_step_pointwise(props, t, dt, spec);
}

Matrix mpf_step_hdr(const TermPropagators& props, double t, double dt,
                    const MpfSpec& spec) {
  return mpf_step(props, t, dt, spec, hdr2_step_unitary);
}

Matrix mpf_step_hdr(const TimeDepHamiltonian& h, double t, double dt,
                    const MpfSpec& spec) {
  TermPropagators props(h);
  return mpf_step_hdr(props, t, dt, spec);
}

}  // namespace tdsim
