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

#include "tdsim/multi_product.hpp"
#include "tdsim/slope.hpp"
#include "test_support.hpp"

using namespace tdsim;
using namespace tdsim::testing;

TEST_CASE("extrapolation weights") {
  SECTION("single branch") {
    const MpfSpec spec = mpf_coefficients({1});
    REQUIRE(spec.alpha.size() == 1);
    REQUIRE(spec.alpha[0] == Catch::Approx(1.0).margin(1e-14));
  }
  SECTION("two branches") {
    const MpfSpec spec = mpf_coefficients({1, 2});
    REQUIRE(spec.alpha[0] == Catch::Approx(-1.0 / 3.0).margin(1e-12));
    REQUIRE(spec.alpha[1] == Catch::Approx(4.0 / 3.0).margin(1e-12));
    REQUIRE(spec.kappa == Catch::Approx(5.0 / 3.0).margin(1e-12));
    REQUIRE(spec.m == 2);
  }
  SECTION("three branches") {
    const MpfSpec spec = mpf_coefficients({1, 2, 3});
    REQUIRE(spec.alpha[0] == Catch::Approx(1.0 / 24.0).margin(1e-11));
    REQUIRE(spec.alpha[1] == Catch::Approx(-16.0 / 15.0).margin(1e-11));
    REQUIRE(spec.alpha[2] == Catch::Approx(81.0 / 40.0).margin(1e-11));
    double sum = 0.0;
    for (double a : spec.alpha) sum += a;
    REQUIRE(sum == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("duplicates are rejected") {
    REQUIRE_THROWS_AS(mpf_coefficients({1, 2, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(mpf_coefficients({0, 1}), std::invalid_argument);
  }
}

TEST_CASE("single-branch steps reduce to the base schemes") {
  const TimeDepHamiltonian h = random_hamiltonian(4, 2, 41);
  TermPropagators props(h);
  const MpfSpec spec = mpf_coefficients({1});
  const double t = 0.2, dt = 0.05;
  REQUIRE(operator_distance(mpf_step_pointwise(props, t, dt, spec),
                            midpoint_step_unitary(props, t, dt)) < 1e-14);
  REQUIRE(operator_distance(mpf_step_hdr(props, t, dt, spec),
                            hdr2_step_unitary(props, t, dt)) < 1e-14);
}

TEST_CASE("time-independent extrapolation matches the explicit power form") {
  std::mt19937_64 rng(43);
  std::vector<LocalTerm> terms;
  terms.push_back({Schedule::constant(0.9), random_hermitian(4, rng)});
  terms.push_back({Schedule::constant(1.3), random_hermitian(4, rng)});
  const TimeDepHamiltonian h(terms, 0.0, 1.0);
  TermPropagators props(h);

  const MpfSpec spec = mpf_coefficients({1, 2});
  const double dt = 0.22;

  // sum_j alpha_j U2(dt / k_j)^{k_j} with the midpoint base written directly
  Matrix expected = Matrix::Zero(4, 4);
  for (std::size_t j = 0; j < spec.k.size(); ++j) {
    const double sub = dt / spec.k[j];
    Matrix u2 = Matrix::Identity(4, 4);
    for (int k = 1; k >= 0; --k)
      u2 = u2 * props.term_unitary(k, 0.5 * sub * h.term(k).schedule.value(0.0));
    for (int k = 0; k < 2; ++k)
      u2 = u2 * props.term_unitary(k, 0.5 * sub * h.term(k).schedule.value(0.0));
    Matrix powered = Matrix::Identity(4, 4);
    for (int p = 0; p < spec.k[j]; ++p) powered = u2 * powered;
    expected += spec.alpha[j] * powered;
  }
  REQUIRE(operator_distance(mpf_step_pointwise(props, 0.1, dt, spec), expected) < 1e-13);

  // integrated and pointwise bases coincide without time dependence
  REQUIRE(operator_distance(mpf_step_pointwise(props, 0.1, dt, spec),
                            mpf_step_hdr(props, 0.1, dt, spec)) < 1e-13);
}

TEST_CASE("two-branch extrapolation reaches local order five") {
  const auto grover =
      build_grover(2, random_product_state(2, 47), 40.0, ScheduleKind::Linear);
  const TimeDepHamiltonian ising = build_ising(2, -1.0);
  const MpfSpec spec = mpf_coefficients({1, 2});

  auto local_slope = [&](const TimeDepHamiltonian& h, bool hdr) {
    TermPropagators props(h);
    const double t = 0.3;
    std::vector<double> dts, errs;
    for (int p = 4; p <= 9; ++p) {
      const double dt = std::pow(2.0, -p);
      const Matrix ref = reference_propagator(h, t, t + dt, 1e-12).matrix();
      const Matrix step = hdr ? mpf_step_hdr(props, t, dt, spec)
                              : mpf_step_pointwise(props, t, dt, spec);
      dts.push_back(dt);
      errs.push_back(operator_distance(step, ref));
    }
    return fit_loglog_slope(dts, errs, 1e-10, 1e-1).slope;
  };

  REQUIRE(local_slope(grover.hamiltonian, false) == Catch::Approx(5.0).margin(0.5));
  REQUIRE(local_slope(ising, true) == Catch::Approx(5.0).margin(0.5));
}

TEST_CASE("deviation from unitarity shrinks at the extrapolation order") {
  const TimeDepHamiltonian ising = build_ising(2, -1.0);
  TermPropagators props(ising);
  const MpfSpec spec = mpf_coefficients({1, 2});
  std::vector<double> dts, defects;
  for (int p = 3; p <= 8; ++p) {
    const double dt = std::pow(2.0, -p);
    const Matrix m = mpf_step_pointwise(props, 0.25, dt, spec);
    dts.push_back(dt);
    defects.push_back(max_abs(m.adjoint() * m - Matrix::Identity(4, 4)));
  }
  const SlopeFit fit = fit_loglog_slope(dts, defects, 1e-14, 1.0);
  // at least dt^{2m+1}; the symmetric base cancels the Hermitian part of the
  // leading error term, so the measured defect decays one order faster still
  REQUIRE(fit.slope > 4.5);
  REQUIRE(fit.slope < 7.5);
}
