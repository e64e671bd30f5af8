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

#include "tdsim/taylor_lcu.hpp"

#include <cmath>
#include <stdexcept>

#include "tdsim/quadrature.hpp"

namespace tdsim {

namespace {

double coefficient_sum(const TimeDepHamiltonian& h, double t, double dt) {
  double linear = 0.0;
  double f_total = 0.0;
  for (int j = 0; j < h.num_terms(); ++j) {
    const double f = h.term(j).schedule.value(t + dt);
    const double fp = h.term(j).schedule.derivative(t + dt);
    linear += dt * f - 0.5 * dt * dt * fp;
    f_total += f;
  }
  return 1.0 + linear + 0.5 * dt * dt * f_total * f_total;
}

}  // namespace

LcuApprox taylor2_step(const TimeDepHamiltonian& h, double t, double dt) {
  const int dim = h.dim();
  const Complex minus_i(0.0, -1.0);
  Matrix weighted = Matrix::Zero(dim, dim);   // sum_j f_j h_j at t + dt
  Matrix derivative = Matrix::Zero(dim, dim);  // sum_j f_j' h_j at t + dt
  for (int j = 0; j < h.num_terms(); ++j) {
    weighted += h.term(j).schedule.value(t + dt) * h.term(j).op.matrix();
    derivative += h.term(j).schedule.derivative(t + dt) * h.term(j).op.matrix();
  }
  Matrix op = Matrix::Identity(dim, dim);
  op += minus_i * (dt * weighted - 0.5 * dt * dt * derivative);
  op += -0.5 * dt * dt * (weighted * weighted);
  return LcuApprox{std::move(op), coefficient_sum(h, t, dt)};
}

double success_weight(const TimeDepHamiltonian& h, double t, double dt) {
  return coefficient_sum(h, t, dt);
}

std::vector<double> segment_boundaries(const TimeDepHamiltonian& h, double total_time) {
  if (!(total_time > 0.0))
    throw std::invalid_argument("segment_boundaries: need a positive horizon");
  const double start = h.t_start();
  const double end = start + total_time;
  auto weight = [&](double x) {
    double sum = 0.0;
    for (int j = 0; j < h.num_terms(); ++j)
      sum += h.term(j).schedule.definite_integral(start, x);
    return sum;
  };
  auto rate = [&](double x) {
    double sum = 0.0;
    for (int j = 0; j < h.num_terms(); ++j) sum += h.term(j).schedule.value(x);
    return sum;
  };
  const double total = weight(end);
  if (!(total > 0.0))
    throw std::invalid_argument("segment_boundaries: zero total coefficient weight");

  const double log2 = std::log(2.0);
  std::vector<double> boundaries;
  double lo = start;
  for (int m = 1; m * log2 <= total; ++m) {
    const double boundary = solve_increasing(weight, rate, m * log2, lo, end, 1e-12);
    boundaries.push_back(boundary);
    lo = boundary;
  }
  if (boundaries.empty() || boundaries.back() < end) boundaries.push_back(end);
  return boundaries;
}

}  // namespace tdsim
