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

#include "tdsim/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "tdsim/quadrature.hpp"

namespace tdsim {

Schedule Schedule::constant(double c) {
  Schedule s;
  s.value = [c](double) { return c; };
  s.derivative = [](double) { return 0.0; };
  s.definite_integral = [c](double a, double b) { return c * (b - a); };
  s.positive = c > 0.0;
  return s;
}

Schedule Schedule::affine(double offset, double slope) {
  Schedule s;
  s.value = [=](double t) { return offset + slope * t; };
  s.derivative = [slope](double) { return slope; };
  s.definite_integral = [=](double a, double b) {
    return offset * (b - a) + 0.5 * slope * (b * b - a * a);
  };
  return s;
}

Schedule Schedule::from_value(std::function<double(double)> f, bool positive) {
  Schedule s;
  s.value = f;
  s.derivative = [f](double t) {
    const double h = 1e-4;
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
  };
  s.definite_integral = [f](double a, double b) {
    if (a == b) return 0.0;
    const double sign = a < b ? 1.0 : -1.0;
    return sign * integrate_adaptive(f, std::min(a, b), std::max(a, b), 1e-12);
  };
  s.positive = positive;
  return s;
}

Schedule clamped_schedule(const Schedule& s, double lo, double hi) {
  Schedule out;
  const auto value = s.value;
  const auto derivative = s.derivative;
  const auto integral = s.definite_integral;
  out.value = [=](double t) { return value(std::clamp(t, lo, hi)); };
  out.derivative = [=](double t) {
    return (t < lo || t > hi) ? 0.0 : derivative(t);
  };
  // Antiderivative relative to lo of the clamped value.
  auto accumulated = [=](double x) {
    if (x <= lo) return (x - lo) * value(lo);
    if (x >= hi) return integral(lo, hi) + (x - hi) * value(hi);
    return integral(lo, x);
  };
  out.definite_integral = [=](double a, double b) {
    return accumulated(b) - accumulated(a);
  };
  out.positive = s.positive;
  return out;
}

}  // namespace tdsim
