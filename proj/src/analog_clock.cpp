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

#include "tdsim/analog_clock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tdsim/quadrature.hpp"

namespace tdsim {

ClockQuadrature clock_quadrature(const GaussianClock& clock,
                                 const std::vector<double>& interior_splits) {
  if (!(clock.omega > 0.0))
    throw std::invalid_argument("clock_quadrature: omega must be positive");
  if (clock.nodes < 2) throw std::invalid_argument("clock_quadrature: need nodes >= 2");
  if (!(clock.half_width > 0.0))
    throw std::invalid_argument("clock_quadrature: half_width must be positive");

  const double support = clock.half_width * clock.omega;
  std::vector<double> edges = {-support, support};
  for (double split : interior_splits)
    if (split > -support && split < support) edges.push_back(split);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const QuadratureRule rule = gauss_legendre(clock.nodes);
  const double variance = clock.omega * clock.omega;
  ClockQuadrature quad;
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (int i = 0; i < clock.nodes; ++i) {
      const double x = mid + half * rule.nodes[i];
      const double w = half * rule.weights[i] * std::exp(-0.5 * x * x / variance);
      quad.offsets.push_back(x);
      quad.weights.push_back(w);
      total += w;
    }
  }
  for (double& w : quad.weights) w /= total;
  return quad;
}

namespace {

Matrix rho_omega_fixed_nodes(const TimeDepHamiltonian& h, double t,
                             const GaussianClock& clock, const QuantumState& psi0,
                             double propagator_tol) {
  const ClockQuadrature quad = clock_quadrature(clock);

  // Accumulate propagators from the earliest needed time, one leg per gap,
  // so each U(t + x, x) is a pair of lookups.
  std::vector<double> checkpoints;
  checkpoints.reserve(2 * quad.offsets.size());
  for (double x : quad.offsets) {
    checkpoints.push_back(x);
    checkpoints.push_back(t + x);
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());

  const int dim = h.dim();
  // Error budget proportional to leg length, floored where double precision
  // cannot resolve tighter targets anyway.
  const double span = checkpoints.back() - checkpoints.front();
  std::vector<Matrix> from_start;
  from_start.reserve(checkpoints.size());
  from_start.push_back(Matrix::Identity(dim, dim));
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    const double leg_len = checkpoints[i] - checkpoints[i - 1];
    const double leg_tol = std::max(propagator_tol * leg_len / span, 2e-13);
    const Matrix leg =
        reference_propagator(h, checkpoints[i - 1], checkpoints[i], leg_tol).matrix();
    from_start.push_back(leg * from_start.back());
  }
  auto propagator_at = [&](double time) -> const Matrix& {
    const auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), time);
    return from_start[static_cast<std::size_t>(it - checkpoints.begin())];
  };

  const Matrix rho0 = psi0.amplitudes() * psi0.amplitudes().adjoint();
  Matrix mix = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < quad.offsets.size(); ++i) {
    const double x = quad.offsets[i];
    const Matrix u = propagator_at(t + x) * propagator_at(x).adjoint();
    mix += quad.weights[i] * (u * rho0 * u.adjoint());
  }
  return mix;
}

}  // namespace

DensityOperator rho_omega(const TimeDepHamiltonian& h, double t,
                          const GaussianClock& clock, const QuantumState& psi0,
                          double propagator_tol) {
  if (t < 0.0)
    throw std::invalid_argument("rho_omega: evolution span t must be nonnegative");
  // Node-doubling acceptance; the configured count seeds the refinement.
  constexpr int kMaxNodes = 1100;
  constexpr double kQuadTol = 1e-10;
  GaussianClock level = clock;
  Matrix current = rho_omega_fixed_nodes(h, t, level, psi0, propagator_tol);
  while (2 * level.nodes + 1 <= kMaxNodes) {
    level.nodes = 2 * level.nodes + 1;
    Matrix finer = rho_omega_fixed_nodes(h, t, level, psi0, propagator_tol);
    const double diff = max_abs(finer - current);
    current = std::move(finer);
    if (diff < kQuadTol) return DensityOperator(std::move(current));
  }
  throw std::runtime_error(
      "rho_omega: clock quadrature did not settle under node doubling");
}

double richardson_observable(const TimeDepHamiltonian& h, double t,
                             const HermitianOperator& obs, double omega,
                             const MpfSpec& spec, const GaussianClock& clock_template,
                             const QuantumState& psi0, double propagator_tol) {
  if (spectral_norm(obs.matrix()) > 1.0 + 1e-9)
    throw std::invalid_argument("richardson_observable: observable norm exceeds 1");
  double sum = 0.0;
  for (std::size_t j = 0; j < spec.k.size(); ++j) {
    GaussianClock clock = clock_template;
    clock.omega = omega / spec.k[j];
    const DensityOperator rho = rho_omega(h, t, clock, psi0, propagator_tol);
    sum += spec.alpha[j] * (obs.matrix() * rho.matrix()).trace().real();
  }
  return sum;
}

double omega_budget(double T, double h2_norm, double epsilon, double c) {
  if (!(T > 0.0) || !(h2_norm > 0.0) || !(epsilon > 0.0) || !(c > 0.0))
    throw std::invalid_argument("omega_budget: all inputs must be positive");
  return c / (T * h2_norm);
}

}  // namespace tdsim
