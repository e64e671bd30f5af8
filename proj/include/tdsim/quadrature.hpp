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

#include <functional>
#include <vector>

namespace tdsim {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
QuadratureRule gauss_legendre(int n);

/// Physicists' Gauss-Hermite rule: sum_i w_i f(x_i) ~ integral of f(y) exp(-y^2) dy.
QuadratureRule gauss_hermite(int n);

/// Fixed-order Gauss-Legendre estimate of the integral of f over [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b, int n);

/// Integrates a smooth f over [a, b] by Gauss-Legendre node doubling until two
/// successive estimates agree to abs_tol. Throws if n_max nodes do not suffice.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-12, int n_max = 4096);

/// Solves g(x) = target for strictly increasing g on [lo, hi]: Newton iterations
/// with the supplied derivative, bracketed by bisection as a safeguard.
double solve_increasing(const std::function<double(double)>& g,
                        const std::function<double(double)>& dg, double target,
                        double lo, double hi, double tol = 1e-12);

}  // namespace tdsim
