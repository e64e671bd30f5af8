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

namespace tdsim {

/// Scalar coefficient of one Hamiltonian term. Carries its derivative and
/// signed definite integral; analytic for the built-in problem schedules,
/// finite-difference/quadrature-backed for user-supplied ones.
struct Schedule {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  /// Signed integral of value over [a, b]; negative orientation flips sign.
  std::function<double(double, double)> definite_integral;
  /// True iff the schedule stays strictly positive on the open simulation
  /// interval interior.
  bool positive = false;

  static Schedule constant(double c);
  /// offset + slope * t
  static Schedule affine(double offset, double slope);
  /// Derivative by five-point central differences, integral by adaptive
  /// Gauss-Legendre quadrature (abs tol 1e-12).
  static Schedule from_value(std::function<double(double)> f, bool positive);
};

/// Constant continuation outside [lo, hi]: value frozen at the endpoint,
/// derivative zero outside, integral handled piecewise.
Schedule clamped_schedule(const Schedule& s, double lo, double hi);

}  // namespace tdsim
