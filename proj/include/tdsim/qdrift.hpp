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

#include <cstdint>
#include <functional>
#include <vector>

#include "tdsim/hamiltonian.hpp"
#include "tdsim/operator_core.hpp"

namespace tdsim {

/// Strictly positive sampling weights over the Hamiltonian terms, summing
/// to 1 within 1e-12.
struct DiscreteMeasure {
  std::vector<double> lambda;

  explicit DiscreteMeasure(std::vector<double> weights);
  static DiscreteMeasure proportional(const std::vector<double>& weights);
  static DiscreteMeasure uniform(int n_terms);
};

/// Probability density over the hybrid space {1..Lambda} x [0, 1]: a strictly
/// positive density in the continuous coordinate per term, with per-term
/// marginal weights. Total mass must be 1 within quadrature tolerance 1e-8.
struct HybridMeasure {
  int num_terms = 0;
  std::function<double(int, double)> density;
  std::vector<double> marginals;

  static HybridMeasure from_discrete(const DiscreteMeasure& lambda);
  /// Computes marginals by quadrature and validates normalization.
  static HybridMeasure make(int num_terms, std::function<double(int, double)> density,
                            int quad_nodes = 64);
};

struct ChannelResult {
  DensityOperator output;
  double bias_bound;  // the second-order channel-distance bound C dt^2 / 2
};

/// Exact expectation of the discrete-measure randomized channel over one step:
/// sum_k lambda_k exp(-i (int f_k)/lambda_k h_k) rho exp(+i ...).
ChannelResult channel_v1(const DensityOperator& rho, const TimeDepHamiltonian& h,
                         double t, double dt, const DiscreteMeasure& lambda);

/// Hybrid-measure channel: the r-integral per term evaluated by fixed-order
/// Gauss-Legendre quadrature with quad_nodes points.
ChannelResult channel_v2(const DensityOperator& rho, const TimeDepHamiltonian& h,
                         double t, double dt, const HybridMeasure& mu,
                         int quad_nodes = 32);

/// Pointwise-query randomized channel: unitaries generated by
/// dt H_k(t + tau dt) / q(k, tau), integrated over tau.
ChannelResult continuous_qdrift_channel(const DensityOperator& rho,
                                        const TimeDepHamiltonian& h, double t, double dt,
                                        const HybridMeasure& q, int quad_nodes = 32);

/// The change of measure taking the integrated-query channel to the pointwise
/// one: q(k, tau_k(r)) = mu(k, r) f_k(t + dt tau_k(r)) / F_k(1) with
/// F_k(r) the normalized running integral of f_k across the step. Requires
/// every schedule positive on the step.
HybridMeasure measure_transform(const HybridMeasure& mu, const TimeDepHamiltonian& h,
                                double t, double dt);

/// tau_k(r) = F_k^{-1}(F_k(1) r), solved by bisection-safeguarded Newton
/// iterations on the strictly increasing F_k (tol 1e-12).
double transform_tau(const TimeDepHamiltonian& h, double t, double dt, int k, double r);

/// The constant C of the one-step discrete-channel bias bound
/// |exact - channel|_1 <= C dt^2 / 2 + O(dt^3), with schedule values taken at
/// t + dt and nested-commutator Schatten-1 norms evaluated at the given rho.
double bias_constant_v1(const DensityOperator& rho, const TimeDepHamiltonian& h,
                        double t, double dt, const DiscreteMeasure& lambda);

/// Monte Carlo estimate of n_steps iterations of the discrete-measure channel
/// starting from |psi><psi|: per-trajectory RNG streams are derived from
/// (seed, trajectory index), so results are reproducible under any execution
/// order.
DensityOperator sample_trajectories(const QuantumState& psi, const TimeDepHamiltonian& h,
                                    const DiscreteMeasure& lambda, double dt, int n_steps,
                                    int n_samples, std::uint64_t seed);

/// n_steps iterations of the exact discrete-measure channel from the start of
/// the Hamiltonian's interval.
DensityOperator channel_v1_evolution(const DensityOperator& rho,
                                     const TimeDepHamiltonian& h,
                                     const DiscreteMeasure& lambda, double dt,
                                     int n_steps);

}  // namespace tdsim
