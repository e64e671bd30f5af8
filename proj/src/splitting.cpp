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

#include "tdsim/splitting.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tdsim {

namespace {

SplitCoefficients make_scheme(std::string name, int order, std::vector<double> a,
                              std::vector<double> b) {
  SplitCoefficients s{std::move(a), std::move(b), order, std::move(name)};
  if (s.a.size() != s.b.size() + 1)
    throw std::invalid_argument("SplitCoefficients: need q+1 a-weights for q b-weights");
  const double sum_a = std::accumulate(s.a.begin(), s.a.end(), 0.0);
  const double sum_b = std::accumulate(s.b.begin(), s.b.end(), 0.0);
  if (std::abs(sum_a - 1.0) > 1e-12 || std::abs(sum_b - 1.0) > 1e-12)
    throw std::invalid_argument("SplitCoefficients: weights of " + s.name +
                                " do not sum to 1");
  return s;
}

std::vector<SplitCoefficients> make_builtin() {
  std::vector<SplitCoefficients> schemes;
  schemes.push_back(make_scheme("Lie", 1, {1.0, 0.0}, {1.0}));
  schemes.push_back(make_scheme("Strang", 2, {0.5, 0.5}, {1.0}));

  // Forest-Ruth-Suzuki, gamma = 1 / (2 - 2^(1/3)).
  const double gamma = 1.0 / (2.0 - std::cbrt(2.0));
  schemes.push_back(make_scheme(
      "FRS", 4,
      {gamma / 2, (1 - gamma) / 2, (1 - gamma) / 2, gamma / 2},
      {gamma, 1 - 2 * gamma, gamma}));

  // Omelyan's Forest-Ruth-type scheme.
  {
    const double a1 = 0.1720865590295143;
    const double b1 = 0.5915620307551568;
    const double a2 = -0.1616217622107222;
    const double b2 = 0.5 - b1;
    const double a3 = 1.0 - 2.0 * (a1 + a2);
    schemes.push_back(make_scheme("FRO", 4, {a1, a2, a3, a2, a1}, {b1, b2, b2, b1}));
  }

  // Suzuki's fourth-order fractal scheme.
  {
    const double a1 = 0.2072453858971879;
    const double b1 = 0.4144907717943757;
    const double a2 = 0.4144907717943757;
    const double b2 = 0.4144907717943757;
    const double a3 = 0.5 - (a1 + a2);
    const double b3 = 1.0 - 2.0 * (b1 + b2);
    schemes.push_back(
        make_scheme("Suz4", 4, {a1, a2, a3, a3, a2, a1}, {b1, b2, b3, b2, b1}));
  }

  // Ostmeyer's optimized fourth-order scheme.
  {
    const double a1 = 0.09257547473195787;
    const double b1 = 0.2540996315529392;
    const double a2 = 0.4627160310210738;
    const double b2 = -0.1676517240119692;
    const double a3 = 0.5 - (a1 + a2);
    const double b3 = 1.0 - 2.0 * (b1 + b2);
    schemes.push_back(
        make_scheme("Ost4", 4, {a1, a2, a3, a3, a2, a1}, {b1, b2, b3, b2, b1}));
  }
  return schemes;
}

}  // namespace

const std::vector<SplitCoefficients>& builtin_schemes() {
  static const std::vector<SplitCoefficients> schemes = make_builtin();
  return schemes;
}

const SplitCoefficients& find_scheme(const std::string& name) {
  for (const SplitCoefficients& s : builtin_schemes())
    if (s.name == name) return s;
  throw std::invalid_argument("find_scheme: unknown scheme " + name);
}

LiftedCoefficients lift(const SplitCoefficients& coeffs) {
  const int q = coeffs.cycles();
  LiftedCoefficients out;
  out.c.resize(q);
  out.d.resize(q);
  for (int k = 0; k < q; ++k) {
    out.c[k] = (k == 0) ? coeffs.a[0] : coeffs.a[k] - out.d[k - 1];
    out.d[k] = coeffs.b[k] - out.c[k];
  }
  return out;
}

SplitWindows split_windows(const LiftedCoefficients& lifted, double dt) {
  const int q = lifted.cycles();
  SplitWindows w;
  w.left.resize(q + 1);
  w.right.resize(q);
  w.left[q] = 0.0;
  double tail = 0.0;  // sum_{j > k} (c_j + d_j)
  for (int k = q - 1; k >= 0; --k) {
    w.right[k] = dt * (lifted.d[k] + tail);
    tail += lifted.c[k] + lifted.d[k];
    w.left[k] = dt * tail;
  }
  return w;
}

}  // namespace tdsim
