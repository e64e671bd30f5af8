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

#include <catch2/catch_amalgamated.hpp>
#include <nlohmann/json.hpp>

#include "tdsim/hamiltonian.hpp"
#include "tdsim/quadrature.hpp"
#include "test_support.hpp"

using namespace tdsim;
using namespace tdsim::testing;

namespace {

// Stationary vector of a column-stochastic matrix by plain power iteration.
Eigen::VectorXd power_iteration_stationary(const Eigen::MatrixXd& g) {
  Eigen::VectorXd v = Eigen::VectorXd::Constant(g.rows(), 1.0 / g.rows());
  for (int iter = 0; iter < 20000; ++iter) {
    Eigen::VectorXd next = g * v;
    next /= next.lpNorm<1>();
    if ((next - v).lpNorm<1>() < 1e-14) return next;
    v = std::move(next);
  }
  return v;
}

}  // namespace

TEST_CASE("evaluate sums the weighted terms") {
  SECTION("all schedules zero at t") {
    std::vector<LocalTerm> terms;
    terms.push_back({Schedule::affine(0.0, 1.0), HermitianOperator(pauli_x())});
    const TimeDepHamiltonian h(terms, 0.0, 1.0);
    REQUIRE(max_abs(h.evaluate_raw(0.0)) == 0.0);
  }
  SECTION("single linear term") {
    std::vector<LocalTerm> terms;
    terms.push_back({Schedule::affine(0.0, 1.0), HermitianOperator(pauli_x())});
    const TimeDepHamiltonian h(terms, 0.0, 1.0);
    REQUIRE(max_abs(h.evaluate_raw(0.5) - 0.5 * pauli_x()) < 1e-15);
  }
  SECTION("adiabatic start is T h1") {
    const double T = 40.0;
    const auto p = build_grover(2, random_product_state(2, 9), T, ScheduleKind::Linear);
    const Matrix expected = T * p.hamiltonian.term(0).op.matrix();
    REQUIRE(max_abs(p.hamiltonian.evaluate_raw(0.0) - expected) < 1e-12);
  }
}

TEST_CASE("grover builder ground states and boundary schedules") {
  const double T = 40.0;
  const QuantumState target = random_product_state(3, 4);
  const auto p = build_grover(3, target, T, ScheduleKind::Sin);

  REQUIRE(max_abs(p.hamiltonian.term(0).op.matrix() * p.initial_state.amplitudes()) <
          1e-12);
  REQUIRE(max_abs(p.hamiltonian.term(1).op.matrix() * target.amplitudes()) < 1e-12);

  const Schedule& f1 = p.hamiltonian.term(0).schedule;
  const Schedule& f2 = p.hamiltonian.term(1).schedule;
  REQUIRE(f1.value(0.0) == Catch::Approx(T).margin(1e-12));
  REQUIRE(f2.value(0.0) == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(f1.value(1.0) == Catch::Approx(0.0).margin(1e-12));
  REQUIRE(f2.value(1.0) == Catch::Approx(T).margin(1e-12));

  // analytic integral of sin(pi t / 2) over [0, 1]
  REQUIRE(f2.definite_integral(0.0, 1.0) / T == Catch::Approx(2.0 / M_PI).epsilon(1e-12));
}

TEST_CASE("grover rejects mismatched targets") {
  REQUIRE_THROWS_AS(build_grover(3, random_product_state(2, 4), 40.0, ScheduleKind::Linear),
                    std::invalid_argument);
}

TEST_CASE("pagerank google matrix is column stochastic and annihilates the rank vector") {
  const int dim = 8;
  Eigen::MatrixXd adjacency = random_digraph(dim, 5);
  adjacency.row(3).setZero();  // force a dangling node
  const auto p = build_pagerank(adjacency, 0.85, 40.0, ScheduleKind::Linear);

  // reconstruct G independently of the builder
  Eigen::MatrixXd pmat = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double degree = adjacency.row(i).sum();
    if (degree > 0.0)
      pmat.row(i) = adjacency.row(i) / degree;
    else
      pmat.row(i).setConstant(1.0 / dim);
  }
  REQUIRE(pmat.row(3).isConstant(1.0 / dim, 1e-15));
  const Eigen::MatrixXd google = 0.85 * pmat.transpose() +
                                 0.15 * Eigen::MatrixXd::Constant(dim, dim, 1.0 / dim);
  for (int j = 0; j < dim; ++j)
    REQUIRE(google.col(j).sum() == Catch::Approx(1.0).margin(1e-12));

  const Eigen::VectorXd stationary = power_iteration_stationary(google);
  const Vector rank = stationary.normalized().cast<Complex>();
  REQUIRE(max_abs(p.hamiltonian.term(1).op.matrix() * rank) < 1e-8);

  // the builder's target state spans the same kernel
  const double overlap = std::abs((rank.adjoint() * p.target_state.amplitudes())(0));
  REQUIRE(overlap == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("ising chain matches the hand-expanded two-site Hamiltonian") {
  const double h_x = -1.0;
  const TimeDepHamiltonian h = build_ising(2, h_x);

  const QuantumState plus = plus_state(2);
  const Vector h1_plus = h.term(0).op.matrix() * plus.amplitudes();
  REQUIRE(max_abs(h1_plus - 2.0 * h_x * plus.amplitudes()) < 1e-12);

  const Matrix zz = kron(pauli_z(), pauli_z());
  const Matrix zi = kron(pauli_z(), Matrix::Identity(2, 2));
  const Matrix iz = kron(Matrix::Identity(2, 2), pauli_z());
  const Matrix expected = 2.0 * (-1.0) * zz + 0.2 * (zi + iz);
  REQUIRE(max_abs(h.term(1).op.matrix() - expected) < 1e-12);

  // integral of pi sin(pi t) over [0, 1/2]
  REQUIRE(h.term(0).schedule.definite_integral(0.0, 0.5) ==
          Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("built problems stay Hermitian across the interval") {
  const auto grover = build_grover(2, random_product_state(2, 2), 40.0, ScheduleKind::Sin);
  const TimeDepHamiltonian ising = build_ising(3, -2.0);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    REQUIRE_NOTHROW(grover.hamiltonian.evaluate(t));
    REQUIRE_NOTHROW(ising.evaluate(t));
  }
}

TEST_CASE("schedule invariants") {
  const auto p = build_grover(2, random_product_state(2, 77), 40.0, ScheduleKind::Sin);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const LocalTerm& term : p.hamiltonian.terms()) {
    const Schedule& s = term.schedule;
    REQUIRE(s.definite_integral(0.3, 0.3) == 0.0);
    for (int trial = 0; trial < 10; ++trial) {
      const double a = unit(rng), b = unit(rng), c = unit(rng);
      const double split = s.definite_integral(a, b) + s.definite_integral(b, c);
      REQUIRE(split == Catch::Approx(s.definite_integral(a, c)).margin(1e-12));

      const double t = unit(rng);
      const double fd = (s.value(t + 1e-5) - s.value(t - 1e-5)) / 2e-5;
      REQUIRE(s.derivative(t) == Catch::Approx(fd).margin(1e-6));

      const double lo = std::min(a, b), hi = std::max(a, b);
      const double quad = integrate_adaptive(s.value, lo, hi, 1e-13);
      REQUIRE(s.definite_integral(lo, hi) == Catch::Approx(quad).margin(1e-10));
    }
  }
}

TEST_CASE("fallback schedule construction matches analytic pieces") {
  const Schedule s =
      Schedule::from_value([](double t) { return std::exp(-t) + 0.5; }, true);
  REQUIRE(s.derivative(0.4) == Catch::Approx(-std::exp(-0.4)).margin(1e-9));
  const double expected = (std::exp(-0.1) - std::exp(-0.8)) + 0.5 * 0.7;
  REQUIRE(s.definite_integral(0.1, 0.8) == Catch::Approx(expected).margin(1e-11));
  REQUIRE(s.definite_integral(0.8, 0.1) == Catch::Approx(-expected).margin(1e-11));
}

TEST_CASE("clamped schedules freeze outside the interval") {
  const Schedule base = Schedule::affine(1.0, 2.0);
  const Schedule s = clamped_schedule(base, 0.0, 1.0);
  REQUIRE(s.value(-0.5) == 1.0);
  REQUIRE(s.value(1.5) == 3.0);
  REQUIRE(s.derivative(-0.5) == 0.0);
  REQUIRE(s.derivative(0.5) == 2.0);
  // Integral across the left boundary: frozen piece plus the affine ramp.
  const double expected = 1.0 * 0.5 + (0.5 * 1.0 + 0.25 * 1.0);
  REQUIRE(s.definite_integral(-0.5, 0.5) == Catch::Approx(expected).margin(1e-14));
  REQUIRE(s.definite_integral(0.5, -0.5) == Catch::Approx(-expected).margin(1e-14));
}

TEST_CASE("problem specs round-trip through json") {
  ProblemSpec spec;
  spec.kind = "pagerank";
  spec.size = 3;
  spec.schedule = "sin";
  spec.time_scale = 20.0;
  spec.alpha = 0.9;
  spec.seed = 123;
  const ProblemSpec back = problem_from_json(to_json(spec));
  REQUIRE(back.kind == spec.kind);
  REQUIRE(back.size == spec.size);
  REQUIRE(back.schedule == spec.schedule);
  REQUIRE(back.time_scale == spec.time_scale);
  REQUIRE(back.alpha == spec.alpha);
  REQUIRE(back.seed == spec.seed);

  REQUIRE_NOTHROW(build_problem(spec));
}
