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

#include "tdsim/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace tdsim {

namespace {

// Nodes and weights from the symmetric tridiagonal Jacobi matrix of the
// orthogonal-polynomial recurrence (Golub-Welsch).
QuadratureRule golub_welsch(const std::vector<double>& offdiag, double weight_mass) {
  const int n = static_cast<int>(offdiag.size()) + 1;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    jacobi(i, i + 1) = offdiag[i];
    jacobi(i + 1, i) = offdiag[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = weight_mass * v0 * v0;
  }
  return rule;
}

const QuadratureRule& cached_gl(int n) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

}  // namespace

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  std::vector<double> offdiag(n - 1);
  for (int i = 1; i < n; ++i)
    offdiag[i - 1] = i / std::sqrt(4.0 * i * i - 1.0);
  return golub_welsch(offdiag, 2.0);
}

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");
  std::vector<double> offdiag(n - 1);
  for (int i = 1; i < n; ++i) offdiag[i - 1] = std::sqrt(0.5 * i);
  return golub_welsch(offdiag, std::sqrt(M_PI));
}

double integrate_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const QuadratureRule& rule = cached_gl(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int n_max) {
  if (a == b) return 0.0;
  int n = 16;
  double prev = integrate_gl(f, a, b, n);
  while (2 * n <= n_max) {
    n *= 2;
    const double curr = integrate_gl(f, a, b, n);
    if (std::abs(curr - prev) < abs_tol) return curr;
    prev = curr;
  }
  std::ostringstream msg;
  msg << "integrate_adaptive: no convergence to " << abs_tol << " with " << n_max
      << " nodes on [" << a << ", " << b << "]";
  throw std::runtime_error(msg.str());
}

double solve_increasing(const std::function<double(double)>& g,
                        const std::function<double(double)>& dg, double target,
                        double lo, double hi, double tol) {
  double glo = g(lo) - target;
  double ghi = g(hi) - target;
  if (glo > 0.0 || ghi < 0.0)
    throw std::invalid_argument("solve_increasing: target not bracketed by [lo, hi]");
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double gx = g(x) - target;
    if (gx > 0.0)
      hi = x;
    else
      lo = x;
    const double slope = dg(x);
    double next = (slope > 0.0) ? x - gx / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < tol) return next;
    x = next;
  }
  return x;
}

}  // namespace tdsim
