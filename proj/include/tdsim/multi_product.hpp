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

#include "tdsim/product_formulas.hpp"

namespace tdsim {

/// Extrapolation weights alpha over substep counts k, solving
/// sum_j alpha_j = 1 and sum_j alpha_j k_j^{-2l} = 0 for l = 1..M-1.
struct MpfSpec {
  std::vector<int> k;
  std::vector<double> alpha;
  int m = 0;           // target half-order (= number of branches)
  double kappa = 0.0;  // conditioning measure sum_j |alpha_j|
};

/// Solves the power-system for the weights; the closed form
/// alpha_j = prod_{i != j} k_j^2 / (k_j^2 - k_i^2) cross-checks the solve.
MpfSpec mpf_coefficients(const std::vector<int>& k);

/// Midpoint step U2(t + dt, t): forward then backward sweep, every term
/// queried at the midpoint.
Matrix midpoint_step_unitary(const TermPropagators& props, double t, double dt);

/// Integrated-query second-order step: forward sweep over the second half
/// window, backward sweep over the first.
Matrix hdr2_step_unitary(const TermPropagators& props, double t, double dt);

/// alpha-weighted sum over branches of k_j-fold midpoint products covering
/// [t, t + dt]. Nonunitary; deviation from the propagator is O(dt^{2m+1}).
Matrix mpf_step_pointwise(const TermPropagators& props, double t, double dt,
                          const MpfSpec& spec);
Matrix mpf_step_pointwise(const TimeDepHamiltonian& h, double t, double dt,
                          const MpfSpec& spec);

/// Same extrapolation with the integrated-query base step.
Matrix mpf_step_hdr(const TermPropagators& props, double t, double dt,
                    const MpfSpec& spec);
Matrix mpf_step_hdr(const TimeDepHamiltonian& h, double t, double dt,
                    const MpfSpec& spec);

}  // namespace tdsim
