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

#include "tdsim/qdrift.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tdsim/quadrature.hpp"

namespace tdsim {

namespace {

double schatten1_hermitian(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

// |[h_{k1}, [h_{k2}, rho]]|_1 for all term pairs.
Eigen::MatrixXd nested_commutator_norms(const DensityOperator& rho,
                                        const TimeDepHamiltonian& h) {
  const int n = h.num_terms();
  Eigen::MatrixXd norms(n, n);
  for (int k2 = 0; k2 < n; ++k2) {
    const Matrix inner = h.term(k2).op.matrix() * rho.matrix() -
                         rho.matrix() * h.term(k2).op.matrix();
    for (int k1 = 0; k1 < n; ++k1) {
      const Matrix outer = h.term(k1).op.matrix() * inner -
                           inner * h.term(k1).op.matrix();
      norms(k1, k2) = schatten1_hermitian(outer);
    }
  }
  return norms;
}

std::vector<double> step_integrals(const TimeDepHamiltonian& h, double t, double dt) {
  std::vector<double> beta(h.num_terms());
  for (int k = 0; k < h.num_terms(); ++k)
    beta[k] = h.term(k).schedule.definite_integral(t, t + dt);
  return beta;
}

// Hybrid-measure analog of the discrete bias constant: the cross part
// integrates the measure away, the coincidence part keeps 1/mu.
double bias_constant_hybrid(const DensityOperator& rho, const TimeDepHamiltonian& h,
                            double t, double dt, const HybridMeasure& mu) {
  const Eigen::MatrixXd norms = nested_commutator_norms(rho, h);
  const int n = h.num_terms();
  std::vector<double> f(n);
  for (int k = 0; k < n; ++k) f[k] = h.term(k).schedule.value(t + dt);
  double c = 0.0;
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2)
      c += std::abs(f[k1] * f[k2]) * norms(k1, k2);
  for (int k = 0; k < n; ++k) {
    const double diag = integrate_gl(
        [&](double r) { return 1.0 / mu.density(k, r); }, 0.0, 1.0, 64);
    c += f[k] * f[k] * diag * norms(k, k);
  }
  return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<double> weights) : lambda(std::move(weights)) {
  if (lambda.empty()) throw std::invalid_argument("DiscreteMeasure: empty weights");
  double sum = 0.0;
  for (double w : lambda) {
    if (!(w > 0.0)) throw std::invalid_argument("DiscreteMeasure: weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "DiscreteMeasure: weights sum to " << sum << ", not 1";
    throw std::invalid_argument(msg.str());
  }
}

DiscreteMeasure DiscreteMeasure::proportional(const std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (!(sum > 0.0))
    throw std::invalid_argument("DiscreteMeasure::proportional: non-positive total");
  std::vector<double> normalized(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) normalized[i] = weights[i] / sum;
  return DiscreteMeasure(std::move(normalized));
}

DiscreteMeasure DiscreteMeasure::uniform(int n_terms) {
  return DiscreteMeasure(std::vector<double>(n_terms, 1.0 / n_terms));
}

HybridMeasure HybridMeasure::from_discrete(const DiscreteMeasure& lambda) {
  HybridMeasure mu;
  mu.num_terms = static_cast<int>(lambda.lambda.size());
  const std::vector<double> weights = lambda.lambda;
  mu.density = [weights](int k, double) { return weights[k]; };
  mu.marginals = weights;
  return mu;
}

HybridMeasure HybridMeasure::make(int num_terms, std::function<double(int, double)> density,
                                  int quad_nodes) {
  HybridMeasure mu;
  mu.num_terms = num_terms;
  mu.density = std::move(density);
  mu.marginals.resize(num_terms);
  double total = 0.0;
  for (int k = 0; k < num_terms; ++k) {
    mu.marginals[k] =
        integrate_gl([&](double r) { return mu.density(k, r); }, 0.0, 1.0, quad_nodes);
    total += mu.marginals[k];
  }
  if (std::abs(total - 1.0) > 1e-8) {
    std::ostringstream msg;
    msg << "HybridMeasure: total mass " << total << " deviates from 1 beyond 1e-8";
    throw std::invalid_argument(msg.str());
  }
  return mu;
}

ChannelResult channel_v1(const DensityOperator& rho, const TimeDepHamiltonian& h,
                         double t, double dt, const DiscreteMeasure& lambda) {
  if (static_cast<int>(lambda.lambda.size()) != h.num_terms())
    throw std::invalid_argument("channel_v1: measure size does not match term count");
  const std::vector<double> beta = step_integrals(h, t, dt);
  Matrix out = Matrix::Zero(h.dim(), h.dim());
  for (int k = 0; k < h.num_terms(); ++k) {
    HermitianExpCache cache(h.term(k).op);
    const Matrix u = cache.unitary(beta[k] / lambda.lambda[k]);
    out += lambda.lambda[k] * (u * rho.matrix() * u.adjoint());
  }
  const double c = bias_constant_v1(rho, h, t, dt, lambda);
  return ChannelResult{DensityOperator(std::move(out)), 0.5 * c * dt * dt};
}

ChannelResult channel_v2(const DensityOperator& rho, const TimeDepHamiltonian& h,
                         double t, double dt, const HybridMeasure& mu, int quad_nodes) {
  if (mu.num_terms != h.num_terms())
    throw std::invalid_argument("channel_v2: measure size does not match term count");
  if (quad_nodes < 2) throw std::invalid_argument("channel_v2: need quad_nodes >= 2");
  const std::vector<double> beta = step_integrals(h, t, dt);
  const QuadratureRule rule = gauss_legendre(quad_nodes);
  Matrix out = Matrix::Zero(h.dim(), h.dim());
  for (int k = 0; k < h.num_terms(); ++k) {
    HermitianExpCache cache(h.term(k).op);
    for (int i = 0; i < quad_nodes; ++i) {
      const double r = 0.5 * (rule.nodes[i] + 1.0);
      const double w = 0.5 * rule.weights[i];
      const double density = mu.density(k, r);
      const Matrix u = cache.unitary(beta[k] / density);
      out += w * density * (u * rho.matrix() * u.adjoint());
    }
  }
  const double c = bias_constant_hybrid(rho, h, t, dt, mu);
  return ChannelResult{DensityOperator(std::move(out)), 0.5 * c * dt * dt};
}

ChannelResult continuous_qdrift_channel(const DensityOperator& rho,
                                        const TimeDepHamiltonian& h, double t, double dt,
                                        const HybridMeasure& q, int quad_nodes) {
  if (q.num_terms != h.num_terms())
    throw std::invalid_argument("continuous_qdrift_channel: measure size mismatch");
  if (quad_nodes < 2)
    throw std::invalid_argument("continuous_qdrift_channel: need quad_nodes >= 2");
  const QuadratureRule rule = gauss_legendre(quad_nodes);
  Matrix out = Matrix::Zero(h.dim(), h.dim());
  for (int k = 0; k < h.num_terms(); ++k) {
    HermitianExpCache cache(h.term(k).op);
    const Schedule& schedule = h.term(k).schedule;
    for (int i = 0; i < quad_nodes; ++i) {
      const double tau = 0.5 * (rule.nodes[i] + 1.0);
      const double w = 0.5 * rule.weights[i];
      const double density = q.density(k, tau);
      const Matrix u = cache.unitary(dt * schedule.value(t + tau * dt) / density);
      out += w * density * (u * rho.matrix() * u.adjoint());
    }
  }
  const double c = bias_constant_hybrid(rho, h, t, dt, q);
  return ChannelResult{DensityOperator(std::move(out)), 0.5 * c * dt * dt};
}

HybridMeasure measure_transform(const HybridMeasure& mu, const TimeDepHamiltonian& h,
                                double t, double dt) {
  if (mu.num_terms != h.num_terms())
    throw std::invalid_argument("measure_transform: measure size mismatch");
  for (int k = 0; k < h.num_terms(); ++k)
    if (!h.term(k).schedule.positive)
      throw std::invalid_argument(
          "measure_transform: requires strictly positive schedules on the step");

  const auto mu_density = mu.density;
  const int n = h.num_terms();
  std::vector<std::function<double(double)>> values(n);
  std::vector<std::function<double(double, double)>> integrals(n);
  for (int k = 0; k < n; ++k) {
    values[k] = h.term(k).schedule.value;
    integrals[k] = h.term(k).schedule.definite_integral;
  }
  auto density = [=](int k, double tau) {
    const double total = integrals[k](t, t + dt);
    const double running = integrals[k](t, t + tau * dt);
    return mu_density(k, running / total) * values[k](t + tau * dt) * dt / total;
  };
  return HybridMeasure::make(n, density, 64);
}

double transform_tau(const TimeDepHamiltonian& h, double t, double dt, int k, double r) {
  if (k < 0 || k >= h.num_terms())
    throw std::invalid_argument("transform_tau: term index out of range");
  const Schedule& schedule = h.term(k).schedule;
  if (!schedule.positive)
    throw std::invalid_argument("transform_tau: requires a strictly positive schedule");
  auto running = [&](double x) { return schedule.definite_integral(t, t + x * dt) / dt; };
  auto slope = [&](double x) { return schedule.value(t + x * dt); };
  const double target = running(1.0) * r;
  return solve_increasing(running, slope, target, 0.0, 1.0, 1e-12);
}

double bias_constant_v1(const DensityOperator& rho, const TimeDepHamiltonian& h,
                        double t, double dt, const DiscreteMeasure& lambda) {
  const Eigen::MatrixXd norms = nested_commutator_norms(rho, h);
  const int n = h.num_terms();
  std::vector<double> f(n);
  for (int k = 0; k < n; ++k) f[k] = h.term(k).schedule.value(t + dt);
  double c = 0.0;
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      const double delta = (k1 == k2) ? 1.0 : 0.0;
      c += std::abs(lambda.lambda[k2] - delta) * std::abs(f[k1] * f[k2]) /
           lambda.lambda[k2] * norms(k1, k2);
    }
  }
  return c;
}

DensityOperator sample_trajectories(const QuantumState& psi, const TimeDepHamiltonian& h,
                                    const DiscreteMeasure& lambda, double dt, int n_steps,
                                    int n_samples, std::uint64_t seed) {
  if (n_steps < 1) throw std::invalid_argument("sample_trajectories: need n_steps >= 1");
  if (n_samples < 1)
    throw std::invalid_argument("sample_trajectories: need n_samples >= 1");
  const int n_terms = h.num_terms();
  if (static_cast<int>(lambda.lambda.size()) != n_terms)
    throw std::invalid_argument("sample_trajectories: measure size mismatch");

  // All sampled unitaries come from the (term, step) grid; precompute them.
  std::vector<std::vector<Matrix>> unitaries(n_steps, std::vector<Matrix>());
  {
    std::vector<HermitianExpCache> caches;
    caches.reserve(n_terms);
    for (int k = 0; k < n_terms; ++k) caches.emplace_back(h.term(k).op);
    for (int s = 0; s < n_steps; ++s) {
      const double t = h.t_start() + s * dt;
      unitaries[s].reserve(n_terms);
      for (int k = 0; k < n_terms; ++k) {
        const double beta = h.term(k).schedule.definite_integral(t, t + dt);
        unitaries[s].push_back(caches[k].unitary(beta / lambda.lambda[k]));
      }
    }
  }

  std::vector<double> cdf(n_terms);
  double acc = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    acc += lambda.lambda[k];
    cdf[k] = acc;
  }
  cdf.back() = 1.0;

  Matrix avg = Matrix::Zero(h.dim(), h.dim());
  for (int traj = 0; traj < n_samples; ++traj) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(traj))));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector state = psi.amplitudes();
    for (int s = 0; s < n_steps; ++s) {
      const double x = unit(rng);
      int k = 0;
      while (k + 1 < n_terms && x > cdf[k]) ++k;
      state = unitaries[s][k] * state;
    }
    avg += state * state.adjoint();
  }
  avg /= double(n_samples);
  return DensityOperator(std::move(avg));
}

DensityOperator channel_v1_evolution(const DensityOperator& rho,
                                     const TimeDepHamiltonian& h,
                                     const DiscreteMeasure& lambda, double dt,
                                     int n_steps) {
  DensityOperator state = rho;
  for (int s = 0; s < n_steps; ++s) {
    const double t = h.t_start() + s * dt;
    state = channel_v1(state, h, t, dt, lambda).output;
  }
  return state;
}

}  // namespace tdsim
