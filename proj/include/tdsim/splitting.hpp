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

#include <string>
#include <vector>

namespace tdsim {

/// Two-operator product formula e^{A a1 dt} e^{B b1 dt} ... e^{B bq dt}
/// e^{A a_{q+1} dt} of declared order, with q cycles. Both coefficient lists
/// must sum to 1.
struct SplitCoefficients {
  std::vector<double> a;  // length q + 1
  std::vector<double> b;  // length q
  int order = 0;
  std::string name;

  int cycles() const { return static_cast<int>(b.size()); }
};

/// Forward/backward sweep coefficients (c_j, d_j) obtained from a two-operator
/// formula by the recursion c1 = a1, c_k = a_k - d_{k-1}, d_k = b_k - c_k.
struct LiftedCoefficients {
  std::vector<double> c;
  std::vector<double> d;

  int cycles() const { return static_cast<int>(c.size()); }
};

/// Time offsets of the forward/backward sweeps of a lifted formula over one
/// step: L_k = dt * sum_{j>=k} (c_j + d_j) with L_{q+1} = 0, and
/// R_k = dt * (d_k + sum_{j>k} (c_j + d_j)).
struct SplitWindows {
  std::vector<double> left;   // length q + 1, last entry 0
  std::vector<double> right;  // length q
};

/// The built-in coefficient sets: Lie (order 1), Strang (order 2), and the
/// four fourth-order schemes FRS, FRO, Suz4, Ost4.
const std::vector<SplitCoefficients>& builtin_schemes();
const SplitCoefficients& find_scheme(const std::string& name);

LiftedCoefficients lift(const SplitCoefficients& coeffs);
SplitWindows split_windows(const LiftedCoefficients& lifted, double dt);

}  // namespace tdsim
