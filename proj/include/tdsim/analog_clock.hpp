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

#include <vector>

#include "tdsim/hamiltonian.hpp"
#include "tdsim/multi_product.hpp"
#include "tdsim/operator_core.hpp"

namespace tdsim {

/// Gaussian clock window of standard deviation omega, discretized on the
/// support [-half_width, half_width] (in units of omega) with `nodes` points
/// per smooth panel. The mass outside an 8-sigma support is ~4e-14 and below
/// every tolerance used here.
struct GaussianClock {
  double omega = 0.05;
  int nodes = 33;
  double half_width = 8.0;
};

/// Discretization of the clock density: offsets in the time coordinate and
/// weights normalized to sum to 1. Composite Gauss-Legendre panels against
/// the Gaussian density, optionally split at interior offsets.
struct ClockQuadrature {
  std::vector<double> offsets;
  std::vector<double> weights;
};

ClockQuadrature clock_quadrature(const GaussianClock& clock,
                                 const std::vector<double>& interior_splits = {0.0});

/// Reduced state of the clock construction at time t: the Gaussian-weighted
/// mixture over shifts x of U(t+x, x) |psi0><psi0| U(t+x, x)^dag, with every
/// propagator resolved by the reference oracle. Schedules are evaluated
/// through their own smooth continuation beyond the simulation interval;
/// freezing them instead would kink the mixture integrand at the window
/// boundaries and contaminate the even-order width expansion.
DensityOperator rho_omega(const TimeDepHamiltonian& h, double t,
                          const GaussianClock& clock, const QuantumState& psi0,
                          double propagator_tol = 1e-11);

/// Extrapolated observable estimate sum_j alpha_j tr(obs rho_{omega/k_j(t)}),
/// with weights from mpf_coefficients. Requires |obs|_2 <= 1.
double richardson_observable(const TimeDepHamiltonian& h, double t,
                             const HermitianOperator& obs, double omega,
                             const MpfSpec& spec, const GaussianClock& clock_template,
                             const QuantumState& psi0, double propagator_tol = 1e-11);

/// Clock-width budget c / (T |h2|) keeping the clock smearing error at the
/// scale of the adiabatic error itself; epsilon participates only through the
/// choice of T and is validated, not consumed.
double omega_budget(double T, double h2_norm, double epsilon, double c = 1.0);

}  // namespace tdsim
