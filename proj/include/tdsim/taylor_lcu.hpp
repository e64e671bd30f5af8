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
#include "tdsim/operator_core.hpp"

namespace tdsim {

/// Second-order truncation of the one-step propagator in linear-combination
/// form, together with its coefficient sum s (the success weight; s >= 1 in
/// the nonnegative-schedule regime for small enough dt).
struct LcuApprox {
  Matrix op;
  double coefficient_sum;
};

/// I + sum_j (dt f_j - dt^2/2 f_j')(-i h_j)
///   + sum_{j,k} (dt^2/2) f_j f_k (-i h_j)(-i h_k), all coefficients
/// evaluated at t + dt. Local error O(dt^3).
LcuApprox taylor2_step(const TimeDepHamiltonian& h, double t, double dt);

/// The coefficient sum alone: 1 + sum_j (dt f_j - dt^2/2 f_j')
/// + (dt^2/2)(sum_j f_j)^2, which tracks exp(sum_j int f_j) to O(dt^3).
double success_weight(const TimeDepHamiltonian& h, double t, double dt);

/// Grid points carving [t_start, t_start + total_time] into segments whose
/// integrated coefficient sum each equals ln 2; the trailing partial segment
/// is returned as-is. The returned list holds the interior boundaries followed
/// by the interval end.
std::vector<double> segment_boundaries(const TimeDepHamiltonian& h, double total_time);

}  // namespace tdsim
