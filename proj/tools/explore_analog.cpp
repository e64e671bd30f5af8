// scratch exploration for the clock-width scaling regimes (not installed)
#include <cstdio>
#include <vector>

#include "tdsim/analog_clock.hpp"
#include "tdsim/hamiltonian.hpp"
#include "tdsim/slope.hpp"

using namespace tdsim;

int main() {
  const double budget = omega_budget(40.0, 1.0, 1e-4);
  const std::vector<double> factors = {11.3137, 8.0, 5.6569, 4.0, 2.8284, 2.0};
  const MpfSpec spec = mpf_coefficients({1, 2});

  std::vector<std::vector<double>> per_seed;
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    const auto grover =
        build_grover(2, random_product_state(2, seed), 40.0, ScheduleKind::Linear);
    const TimeDepHamiltonian& h = grover.hamiltonian;
    const double t = 0.5;
    const Matrix uref = reference_propagator(h, 0.0, t, 1e-12).matrix();
    const QuantumState psi_t{Vector(uref * grover.initial_state.amplitudes())};
    const auto obs = HermitianOperator(
        grover.target_state.amplitudes() * grover.target_state.amplitudes().adjoint());
    const double exact_obs =
        (obs.matrix() * psi_t.amplitudes() * psi_t.amplitudes().adjoint()).trace().real();
    std::vector<double> errs;
    for (double f : factors) {
      GaussianClock clock; clock.omega = f * budget;
      errs.push_back(std::abs(richardson_observable(h, t, obs, clock.omega, spec, clock,
                                                    grover.initial_state) - exact_obs));
    }
    per_seed.push_back(errs);
  }
  std::vector<double> w;
  for (double f : factors) w.push_back(f * budget);
  auto fit_avg = [&](int n_seeds) {
    std::vector<double> acc(factors.size(), 0.0);
    for (int s = 0; s < n_seeds; ++s)
      for (std::size_t i = 0; i < factors.size(); ++i) acc[i] += per_seed[s][i];
    return fit_loglog_slope(w, acc, 1e-12, 99.0).slope;
  };
  for (int s = 0; s < 5; ++s) {
    std::vector<double> e = per_seed[s];
    std::printf("seed %d slope %.3f\n", s + 1, fit_loglog_slope(w, e, 1e-12, 99.).slope);
  }
  std::printf("avg3 slope %.3f   avg5 slope %.3f\n", fit_avg(3), fit_avg(5));
  return 0;
}
