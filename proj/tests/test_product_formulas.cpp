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

#include "tdsim/product_formulas.hpp"
#include "tdsim/slope.hpp"
#include "test_support.hpp"

using namespace tdsim;
using namespace tdsim::testing;

namespace {

Matrix term_exp(const TimeDepHamiltonian& h, int k, double theta) {
  return herm_expm(h.term(k).op, theta).matrix();
}

// exp(-i (integral of f_k over [t+a, t+b]) h_k)
Matrix window_exp(const TimeDepHamiltonian& h, int k, double t, double a, double b) {
  return term_exp(h, k, h.term(k).schedule.definite_integral(t + a, t + b));
}

// exp(-i dur f_k(t_eval) h_k)
Matrix point_exp(const TimeDepHamiltonian& h, int k, double t_eval, double dur) {
  return term_exp(h, k, dur * h.term(k).schedule.value(t_eval));
}

// The midpoint scheme written out verbatim: forward sweep then backward sweep,
// all terms queried at t + dt/2 with half-step durations.
Matrix midpoint_transcription(const TimeDepHamiltonian& h, double t, double dt) {
  const double mid = t + dt / 2;
  Matrix u = Matrix::Identity(h.dim(), h.dim());
  for (int k = 0; k < h.num_terms(); ++k) u = u * point_exp(h, k, mid, dt / 2);
  for (int k = h.num_terms() - 1; k >= 0; --k) u = u * point_exp(h, k, mid, dt / 2);
  return u;
}

TimeDepHamiltonian constant_hamiltonian(int dim, int n_terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(0.4, 1.6);
  std::vector<LocalTerm> terms;
  for (int k = 0; k < n_terms; ++k)
    terms.push_back({Schedule::constant(coeff(rng)), random_hermitian(dim, rng)});
  return TimeDepHamiltonian(std::move(terms), 0.0, 1.0);
}

}  // namespace

TEST_CASE("builtin scheme weights") {
  const double gamma = 1.0 / (2.0 - std::cbrt(2.0));
  REQUIRE(gamma == Catch::Approx(1.3512071919596578).epsilon(1e-15));

  const SplitCoefficients& frs = find_scheme("FRS");
  REQUIRE(frs.cycles() == 3);
  REQUIRE(frs.order == 4);
  REQUIRE(frs.a[0] == Catch::Approx(gamma / 2).epsilon(1e-15));
  REQUIRE(frs.a[1] == Catch::Approx((1 - gamma) / 2).epsilon(1e-15));
  REQUIRE(frs.b[0] == Catch::Approx(gamma).epsilon(1e-15));
  REQUIRE(frs.b[1] == Catch::Approx(1 - 2 * gamma).epsilon(1e-15));

  const SplitCoefficients& ost4 = find_scheme("Ost4");
  REQUIRE(ost4.a[0] == Catch::Approx(0.09257547473195787).epsilon(1e-15));
  REQUIRE(ost4.b[1] == Catch::Approx(-0.1676517240119692).epsilon(1e-15));
  REQUIRE(ost4.cycles() == 5);

  REQUIRE(find_scheme("Lie").order == 1);
  REQUIRE(find_scheme("Strang").order == 2);
  REQUIRE(find_scheme("FRO").cycles() == 4);
  REQUIRE(find_scheme("Suz4").cycles() == 5);

  for (const SplitCoefficients& s : builtin_schemes()) {
    double sa = 0.0, sb = 0.0;
    for (double a : s.a) sa += a;
    for (double b : s.b) sb += b;
    REQUIRE(sa == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(sb == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("lifting recursion") {
  SECTION("strang") {
    const LiftedCoefficients l = lift(find_scheme("Strang"));
    REQUIRE(l.c.size() == 1);
    REQUIRE(l.c[0] == Catch::Approx(0.5).margin(1e-15));
    REQUIRE(l.d[0] == Catch::Approx(0.5).margin(1e-15));
  }
  SECTION("frs lifts to symmetric sweep weights") {
    const double gamma = 1.0 / (2.0 - std::cbrt(2.0));
    const LiftedCoefficients l = lift(find_scheme("FRS"));
    const std::vector<double> expected{gamma / 2, (1 - 2 * gamma) / 2, gamma / 2};
    for (int j = 0; j < 3; ++j) {
      REQUIRE(l.c[j] == Catch::Approx(expected[j]).margin(1e-14));
      REQUIRE(l.d[j] == Catch::Approx(expected[j]).margin(1e-14));
    }
  }
  SECTION("sweep weights sum to one for every builtin scheme") {
    for (const SplitCoefficients& s : builtin_schemes()) {
      const LiftedCoefficients l = lift(s);
      double total = 0.0;
      for (int j = 0; j < l.cycles(); ++j) total += l.c[j] + l.d[j];
      REQUIRE(total == Catch::Approx(1.0).margin(1e-12));
      if (s.order == 4) {
        // generic nonzero sweep coefficients keep the gate audit honest
        for (int j = 0; j < l.cycles(); ++j) {
          REQUIRE(std::abs(l.c[j]) > 1e-6);
          REQUIRE(std::abs(l.d[j]) > 1e-6);
        }
      }
    }
  }
}

TEST_CASE("lifted product unitary") {
  std::mt19937_64 rng(19);
  SECTION("single operator is exact") {
    const HermitianOperator h = random_hermitian(4, rng);
    const double dt = 0.3;
    const auto u = lifted_product_unitary({h}, lift(find_scheme("Ost4")), dt);
    REQUIRE(operator_distance(u.matrix(), herm_expm(h, dt).matrix()) < 1e-13);
  }
  SECTION("commuting terms compose exactly") {
    Eigen::VectorXd d1 = Eigen::VectorXd::Random(4), d2 = Eigen::VectorXd::Random(4);
    const HermitianOperator h1{Matrix(d1.cast<Complex>().asDiagonal())};
    const HermitianOperator h2{Matrix(d2.cast<Complex>().asDiagonal())};
    const auto u = lifted_product_unitary({h1, h2}, lift(find_scheme("FRS")), 0.4);
    const auto exact = herm_expm(HermitianOperator(h1.matrix() + h2.matrix()), 0.4);
    REQUIRE(operator_distance(u.matrix(), exact.matrix()) < 1e-12);
  }
  SECTION("fourth-order convergence against the exponential oracle") {
    const HermitianOperator h1 = random_hermitian(8, rng);
    const HermitianOperator h2 = random_hermitian(8, rng);
    const HermitianOperator sum{h1.matrix() + h2.matrix()};
    const LiftedCoefficients l = lift(find_scheme("Ost4"));
    std::vector<double> dts, errs;
    for (int p = 2; p <= 7; ++p) {
      const double dt = std::pow(2.0, -p);
      const Matrix approx = lifted_product_unitary({h1, h2}, l, dt).matrix();
      dts.push_back(dt);
      errs.push_back(operator_distance(approx, herm_expm(sum, dt).matrix()));
    }
    const SlopeFit fit = fit_loglog_slope(dts, errs, 1e-14, 1.0);
    REQUIRE(fit.slope > 4.5);
    REQUIRE(fit.slope < 5.5);
  }
}

TEST_CASE("pointwise step identities") {
  const auto grover = build_grover(2, random_product_state(2, 55), 40.0, ScheduleKind::Linear);
  const TimeDepHamiltonian& h = grover.hamiltonian;
  TermPropagators props(h);

  SECTION("strang with trailing clock placement is the midpoint scheme") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> ts(0.1, 0.9), dts(1e-3, 0.05);
    for (int trial = 0; trial < 20; ++trial) {
      const double t = ts(rng), dt = dts(rng);
      const StepResult step = pointwise_step(props, t, dt, find_scheme("Strang"), 0);
      REQUIRE(operator_distance(step.unitary.matrix(), midpoint_transcription(h, t, dt)) <
              1e-12);
      REQUIRE(step.gates.count() == 3);  // 2*Lambda*q - q
    }
  }

  SECTION("time-independent schedules collapse onto the lifted product") {
    const TimeDepHamiltonian hc = constant_hamiltonian(4, 3, 3);
    TermPropagators cprops(hc);
    std::vector<HermitianOperator> scaled;
    for (int k = 0; k < hc.num_terms(); ++k)
      scaled.push_back(
          HermitianOperator(hc.term(k).schedule.value(0.0) * hc.term(k).op.matrix()));
    for (const std::string name : {"Strang", "FRS", "FRO", "Suz4", "Ost4"}) {
      const SplitCoefficients& scheme = find_scheme(name);
      const double dt = 0.17;
      const StepResult step = pointwise_step(cprops, 0.4, dt, scheme, 1);
      const auto expected = lifted_product_unitary(scaled, lift(scheme), dt);
      REQUIRE(operator_distance(step.unitary.matrix(), expected.matrix()) < 1e-12);
    }
  }

  SECTION("frs with interior clock placement reproduces the seven-gate formula") {
    const double gamma = 1.0 / (2.0 - std::cbrt(2.0));
    const double t = 0.37, dt = 0.03;
    const StepResult step = pointwise_step(props, t, dt, find_scheme("FRS"), 1);
    REQUIRE(step.gates.count() == 7);  // 2*2*3 - 5

    Matrix expected = Matrix::Identity(h.dim(), h.dim());
    expected = expected * point_exp(h, 0, t + dt, gamma * dt / 2);
    expected = expected * point_exp(h, 1, t + (1 - gamma / 2) * dt, gamma * dt);
    expected = expected * point_exp(h, 0, t + (1 - gamma) * dt, (1 - gamma) * dt / 2);
    expected = expected * point_exp(h, 1, t + dt / 2, (1 - 2 * gamma) * dt);
    expected = expected * point_exp(h, 0, t + gamma * dt, (1 - gamma) * dt / 2);
    expected = expected * point_exp(h, 1, t + gamma * dt / 2, gamma * dt);
    expected = expected * point_exp(h, 0, t, gamma * dt / 2);
    REQUIRE(operator_distance(step.unitary.matrix(), expected) < 1e-12);
  }

  SECTION("lambda_prime out of range is rejected") {
    REQUIRE_THROWS_AS(pointwise_step(props, 0.2, 0.01, find_scheme("FRS"), 3),
                      std::invalid_argument);
  }
}

TEST_CASE("hdr step identities") {
  const auto grover = build_grover(2, random_product_state(2, 66), 40.0, ScheduleKind::Sin);
  const TimeDepHamiltonian& h = grover.hamiltonian;
  TermPropagators props(h);

  SECTION("strang base gives the second-order integrated-query formula") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> ts(0.1, 0.9), dts(1e-3, 0.05);
    for (int trial = 0; trial < 20; ++trial) {
      const double t = ts(rng), dt = dts(rng);
      const StepResult step = hdr_step(props, t, dt, find_scheme("Strang"));
      const Matrix expected = window_exp(h, 0, t, dt / 2, dt) *
                              window_exp(h, 1, t, 0.0, dt) *
                              window_exp(h, 0, t, 0.0, dt / 2);
      REQUIRE(operator_distance(step.unitary.matrix(), expected) < 1e-12);
      REQUIRE(step.gates.count() == 3);  // 2*Lambda*q - (2q - 1)
    }
  }

  SECTION("frs base matches the explicit seven-window formula") {
    const double gamma = 1.0 / (2.0 - std::cbrt(2.0));
    const double t = 0.21, dt = 0.04;
    const StepResult step = hdr_step(props, t, dt, find_scheme("FRS"));
    REQUIRE(step.gates.count() == 7);

    Matrix expected = Matrix::Identity(h.dim(), h.dim());
    expected = expected * window_exp(h, 0, t, (1 - gamma / 2) * dt, dt);
    expected = expected * window_exp(h, 1, t, (1 - gamma) * dt, dt);
    expected = expected * window_exp(h, 0, t, dt / 2, (1 - gamma / 2) * dt);
    expected = expected * window_exp(h, 1, t, gamma * dt, (1 - gamma) * dt);
    expected = expected * window_exp(h, 0, t, gamma * dt / 2, dt / 2);
    expected = expected * window_exp(h, 1, t, 0.0, gamma * dt);
    expected = expected * window_exp(h, 0, t, 0.0, gamma * dt / 2);
    REQUIRE(operator_distance(step.unitary.matrix(), expected) < 1e-12);
  }

  SECTION("time-independent schedules collapse onto the lifted product") {
    const TimeDepHamiltonian hc = constant_hamiltonian(4, 3, 13);
    TermPropagators cprops(hc);
    std::vector<HermitianOperator> scaled;
    for (int k = 0; k < hc.num_terms(); ++k)
      scaled.push_back(
          HermitianOperator(hc.term(k).schedule.value(0.0) * hc.term(k).op.matrix()));
    const double dt = 0.11;
    const StepResult step = hdr_step(cprops, 0.3, dt, find_scheme("Ost4"));
    const auto expected = lifted_product_unitary(scaled, lift(find_scheme("Ost4")), dt);
    REQUIRE(operator_distance(step.unitary.matrix(), expected.matrix()) < 1e-12);
  }
}

TEST_CASE("iacs step") {
  const auto grover = build_grover(2, random_product_state(2, 88), 40.0, ScheduleKind::Linear);
  const TimeDepHamiltonian& h = grover.hamiltonian;

  SECTION("u vanishes for proportional schedules") {
    std::vector<LocalTerm> terms;
    std::mt19937_64 rng(5);
    terms.push_back({oscillating_schedule(1.2, 0.5, 0.0), random_hermitian(4, rng)});
    terms.push_back({oscillating_schedule(1.2, 0.5, 0.0), random_hermitian(4, rng)});
    const TimeDepHamiltonian same(terms, 0.0, 1.0);
    REQUIRE(std::abs(iacs_u(same, 0.2, 0.1)) < 1e-13);
  }

  SECTION("time-independent schedules reduce to the base product") {
    const TimeDepHamiltonian hc = constant_hamiltonian(4, 2, 23);
    REQUIRE(std::abs(iacs_u(hc, 0.1, 0.2)) < 1e-15);
    const double dt = 0.2;
    const StepResult step = iacs_step(hc, 0.1, dt);
    const SplitCoefficients& frs = find_scheme("FRS");
    Matrix expected = Matrix::Identity(4, 4);
    const double f0 = hc.term(0).schedule.value(0.0);
    const double f1 = hc.term(1).schedule.value(0.0);
    for (int i = 0; i <= frs.cycles(); ++i) {
      expected = expected * herm_expm(hc.term(0).op, frs.a[i] * f0 * dt).matrix();
      if (i < frs.cycles())
        expected = expected * herm_expm(hc.term(1).op, frs.b[i] * f1 * dt).matrix();
    }
    REQUIRE(operator_distance(step.unitary.matrix(), expected) < 1e-12);
    REQUIRE(step.gates.count() == 7);
  }

  SECTION("u agrees with a brute-force double Riemann sum") {
    const double t = 0.3, dt = 0.05;
    const Schedule& f1 = h.term(0).schedule;
    const Schedule& f2 = h.term(1).schedule;
    const int n = 2000;
    const double hstep = dt / n;
    double outer = 0.0;
    for (int i = 0; i < n; ++i) {
      const double s1 = t + (i + 0.5) * hstep;
      double inner = 0.0;
      const int m = i + 1;  // resolve [t, s1] on the same lattice
      const double hin = (s1 - t) / m;
      for (int j = 0; j < m; ++j) {
        const double s2 = t + (j + 0.5) * hin;
        inner += (f1.value(s1) * f2.value(s2) - f2.value(s1) * f1.value(s2)) * hin;
      }
      outer += inner * hstep;
    }
    const double beta2 = f2.definite_integral(t, t + dt);
    const double expected = outer / (2.0 * beta2);
    REQUIRE(iacs_u(h, t, dt) == Catch::Approx(expected).margin(1e-8));
  }

  SECTION("vanishing beta2 is diagnosed") {
    std::vector<LocalTerm> terms;
    std::mt19937_64 rng(7);
    terms.push_back({Schedule::constant(1.0), random_hermitian(4, rng)});
    terms.push_back({Schedule::affine(-0.5, 1.0), random_hermitian(4, rng)});
    const TimeDepHamiltonian odd(terms, 0.0, 1.0);
    // integral of (t - 1/2) over [0, 1] vanishes
    REQUIRE_THROWS_AS(iacs_step(odd, 0.0, 1.0), std::runtime_error);
  }
}

TEST_CASE("gate counts match the sweep-count table") {
  // For Lambda terms and q cycles: interior clock placement gives
  // 2 Lambda q - (2q - 1); all-bottom placement 2 Lambda q - q; all-top
  // placement 2 Lambda q - (q - 1). Integrated-query steps always merge to
  // 2 Lambda q - (2q - 1).
  const std::vector<std::pair<std::string, int>> bases = {
      {"Strang", 1}, {"FRS", 3}, {"FRO", 4}, {"Suz4", 5}};
  for (int n_terms : {2, 3, 4}) {
    const TimeDepHamiltonian h = random_hamiltonian(2, n_terms, 100 + n_terms);
    TermPropagators props(h);
    for (const auto& [name, q] : bases) {
      const SplitCoefficients& scheme = find_scheme(name);
      REQUIRE(scheme.cycles() == q);
      for (int lp = 0; lp <= n_terms; ++lp) {
        const StepResult step = pointwise_step(props, 0.31, 0.07, scheme, lp);
        int expected = 2 * n_terms * q;
        if (lp == 0)
          expected -= q;
        else if (lp == n_terms)
          expected -= q - 1;
        else
          expected -= 2 * q - 1;
        INFO("base " << name << " Lambda " << n_terms << " lambda_prime " << lp);
        REQUIRE(step.gates.count() == expected);
      }
      const StepResult hdr = hdr_step(props, 0.31, 0.07, scheme);
      REQUIRE(hdr.gates.count() == 2 * n_terms * q - (2 * q - 1));
    }
  }
}

TEST_CASE("steps stay unitary") {
  const TimeDepHamiltonian h = random_hamiltonian(4, 3, 17);
  TermPropagators props(h);
  for (const std::string name : {"Lie", "Strang", "FRS", "FRO", "Suz4", "Ost4"}) {
    const SplitCoefficients& scheme = find_scheme(name);
    for (double dt : {0.01, 0.2}) {
      const Matrix u = pointwise_step(props, 0.4, dt, scheme, 1).unitary.matrix();
      REQUIRE(max_abs(u.adjoint() * u - Matrix::Identity(4, 4)) < 1e-10);
      const Matrix v = hdr_step(props, 0.4, dt, scheme).unitary.matrix();
      REQUIRE(max_abs(v.adjoint() * v - Matrix::Identity(4, 4)) < 1e-10);
    }
  }
}

TEST_CASE("single-step order against the reference propagator") {
  const auto grover = build_grover(2, random_product_state(2, 31), 40.0, ScheduleKind::Linear);
  const TimeDepHamiltonian& h = grover.hamiltonian;
  TermPropagators props(h);
  const double t = 0.3;

  auto order_slope = [&](auto&& make_step) {
    std::vector<double> dts, errs;
    for (int p = 4; p <= 9; ++p) {
      const double dt = std::pow(2.0, -p);
      const Matrix ref = reference_propagator(h, t, t + dt, 1e-12).matrix();
      dts.push_back(dt);
      errs.push_back(operator_distance(make_step(dt), ref));
    }
    return fit_loglog_slope(dts, errs, 1e-10, 1e-1).slope;
  };

  SECTION("pointwise") {
    const double s2 = order_slope([&](double dt) {
      return pointwise_step(props, t, dt, find_scheme("Strang"), 1).unitary.matrix();
    });
    REQUIRE(s2 == Catch::Approx(3.0).margin(0.5));
    const double s4 = order_slope([&](double dt) {
      return pointwise_step(props, t, dt, find_scheme("FRS"), 1).unitary.matrix();
    });
    REQUIRE(s4 == Catch::Approx(5.0).margin(0.5));
  }
  SECTION("hdr") {
    const double s4 = order_slope([&](double dt) {
      return hdr_step(props, t, dt, find_scheme("Ost4")).unitary.matrix();
    });
    REQUIRE(s4 == Catch::Approx(5.0).margin(0.5));
  }
  SECTION("iacs") {
    const double s4 = order_slope([&](double dt) {
      return iacs_step(props, t, dt, find_scheme("FRS")).unitary.matrix();
    });
    REQUIRE(s4 == Catch::Approx(5.0).margin(0.5));
  }
}

TEST_CASE("compose_evolution") {
  const auto grover = build_grover(2, random_product_state(2, 91), 40.0, ScheduleKind::Linear);
  const TimeDepHamiltonian& h = grover.hamiltonian;

  SECTION("one step equals the step function") {
    const auto composed = compose_evolution(make_hdr_step_fn(find_scheme("Ost4")), h, 1);
    const StepResult single = hdr_step(h, 0.0, 1.0, find_scheme("Ost4"));
    REQUIRE(operator_distance(composed.unitary.matrix(), single.unitary.matrix()) <
            1e-13);
    REQUIRE(composed.gate_count == single.gates.count());
  }

  SECTION("composing the reference oracle reproduces the full propagator") {
    const double tol = 1e-11;
    StepFn exact_step = [tol](const TermPropagators& props, double t, double dt) {
      return StepResult{GateSequence{},
                        reference_propagator(props.hamiltonian(), t, t + dt, tol)};
    };
    const auto composed = compose_evolution(exact_step, h, 4);
    const auto full = reference_propagator(h, 0.0, 1.0, tol);
    REQUIRE(operator_distance(composed.unitary.matrix(), full.matrix()) < 5 * 4 * tol);
  }

  SECTION("fourth-order halving ratio and gate accounting") {
    const auto ref = reference_propagator(h, 0.0, 1.0, 1e-12);
    const auto coarse = compose_evolution(make_hdr_step_fn(find_scheme("Ost4")), h, 64);
    const auto fine = compose_evolution(make_hdr_step_fn(find_scheme("Ost4")), h, 128);
    REQUIRE(coarse.gate_count == 64 * (2 * 2 * 5 - 9));
    REQUIRE(fine.gate_count == 128 * (2 * 2 * 5 - 9));
    const double e64 = operator_distance(coarse.unitary.matrix(), ref.matrix());
    const double e128 = operator_distance(fine.unitary.matrix(), ref.matrix());
    REQUIRE(e64 / e128 > 10.0);
    REQUIRE(e64 / e128 < 24.0);
  }
}

TEST_CASE("gate sequences serialize to the line format") {
  const auto grover = build_grover(2, random_product_state(2, 14), 40.0, ScheduleKind::Linear);
  const StepResult step = hdr_step(grover.hamiltonian, 0.25, 0.125, find_scheme("Strang"));
  const std::string text = step.gates.to_text();
  REQUIRE(text ==
          "k=0 kind=int t0=0.3125 t1=0.375 coeff=1\n"
          "k=1 kind=int t0=0.25 t1=0.375 coeff=1\n"
          "k=0 kind=int t0=0.25 t1=0.3125 coeff=1\n");

  const StepResult pw = pointwise_step(grover.hamiltonian, 0.25, 0.125,
                                       find_scheme("Strang"), 0);
  REQUIRE(pw.gates.to_text() ==
          "k=0 kind=pw t0=0.3125 t1=0 coeff=0.0625\n"
          "k=1 kind=pw t0=0.3125 t1=0 coeff=0.125\n"
          "k=0 kind=pw t0=0.3125 t1=0 coeff=0.0625\n");
}
