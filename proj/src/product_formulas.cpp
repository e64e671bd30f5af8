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

#include "tdsim/product_formulas.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "tdsim/quadrature.hpp"

namespace tdsim {

namespace {

bool is_null(const Gate& g) {
  if (g.coeff == 0.0) return true;
  return g.kind == GateKind::Integrated && g.t0 == g.t1;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

void GateSequence::push(Gate gate) {
  if (is_null(gate)) return;
  if (!gates_.empty()) {
    Gate& back = gates_.back();
    if (back.term == gate.term && back.kind == gate.kind) {
      if (gate.kind == GateKind::Pointwise && back.t0 == gate.t0) {
        back.coeff += gate.coeff;
        if (is_null(back)) gates_.pop_back();
        return;
      }
      if (gate.kind == GateKind::Integrated) {
        // back is the left factor; windows chain when its start meets the
        // incoming gate's end.
        if (back.coeff == gate.coeff && back.t0 == gate.t1) {
          back.t0 = gate.t0;
          if (is_null(back)) gates_.pop_back();
          return;
        }
        if (back.t0 == gate.t0 && back.t1 == gate.t1) {
          back.coeff += gate.coeff;
          if (is_null(back)) gates_.pop_back();
          return;
        }
      }
    }
  }
  gates_.push_back(gate);
}

std::string GateSequence::to_text() const {
  std::ostringstream out;
  for (const Gate& g : gates_) {
    out << "k=" << g.term << " kind=" << (g.kind == GateKind::Pointwise ? "pw" : "int")
        << " t0=" << format_double(g.t0) << " t1=" << format_double(g.t1)
        << " coeff=" << format_double(g.coeff) << "\n";
  }
  return out.str();
}

TermPropagators::TermPropagators(const TimeDepHamiltonian& h) : hamiltonian_(&h) {
  caches_.reserve(h.num_terms());
  for (int k = 0; k < h.num_terms(); ++k)
    caches_.emplace_back(h.term(k).op);
}

double TermPropagators::gate_angle(const Gate& gate) const {
  const Schedule& schedule = hamiltonian_->term(gate.term).schedule;
  if (gate.kind == GateKind::Pointwise)
    return gate.coeff * schedule.value(gate.t0);
  return gate.coeff * schedule.definite_integral(gate.t0, gate.t1);
}

Matrix TermPropagators::gate_unitary(const Gate& gate) const {
  return caches_[gate.term].unitary(gate_angle(gate));
}

Matrix TermPropagators::sequence_unitary(const GateSequence& seq) const {
  Matrix result = Matrix::Identity(dim(), dim());
  // Gates are stored leftmost-first; apply right to left.
  for (auto it = seq.gates().rbegin(); it != seq.gates().rend(); ++it)
    result = gate_unitary(*it) * result;
  return result;
}

UnitaryOperator lifted_product_unitary(const std::vector<HermitianOperator>& terms,
                                       const LiftedCoefficients& lifted, double dt) {
  if (terms.empty())
    throw std::invalid_argument("lifted_product_unitary: need at least one term");
  const int dim = terms.front().dim();
  std::vector<HermitianExpCache> caches;
  caches.reserve(terms.size());
  for (const HermitianOperator& h : terms) caches.emplace_back(h);

  Matrix result = Matrix::Identity(dim, dim);
  const int n = static_cast<int>(terms.size());
  for (int j = lifted.cycles() - 1; j >= 0; --j) {
    Matrix backward = Matrix::Identity(dim, dim);
    Matrix forward = Matrix::Identity(dim, dim);
    for (int k = n - 1; k >= 0; --k)
      backward = backward * caches[k].unitary(lifted.d[j] * dt);
    for (int k = 0; k < n; ++k)
      forward = forward * caches[k].unitary(lifted.c[j] * dt);
    result = forward * backward * result;
  }
  return UnitaryOperator(result);
}

StepResult pointwise_step(const TermPropagators& props, double t, double dt,
                          const SplitCoefficients& coeffs, int lambda_prime) {
  const int n_terms = props.num_terms();
  if (lambda_prime < 0 || lambda_prime > n_terms)
    throw std::invalid_argument("pointwise_step: lambda_prime out of range");
  const SplitWindows w = split_windows(lift(coeffs), dt);
  const int q = static_cast<int>(w.right.size());

  GateSequence seq;
  for (int j = 0; j < q; ++j) {
    const double top_f = t + w.left[j];
    const double bot_f = t + w.right[j];
    const double dur_f = w.left[j] - w.right[j];
    for (int k = 0; k < n_terms; ++k)
      seq.push({k, GateKind::Pointwise, k < lambda_prime ? top_f : bot_f, 0.0, dur_f});
    const double top_b = t + w.right[j];
    const double bot_b = t + w.left[j + 1];
    const double dur_b = w.right[j] - w.left[j + 1];
    for (int k = n_terms - 1; k >= 0; --k)
      seq.push({k, GateKind::Pointwise, k >= lambda_prime ? top_b : bot_b, 0.0, dur_b});
  }
  Matrix u = props.sequence_unitary(seq);
  return StepResult{std::move(seq), UnitaryOperator(std::move(u))};
}

StepResult pointwise_step(const TimeDepHamiltonian& h, double t, double dt,
                          const SplitCoefficients& coeffs, int lambda_prime) {
  TermPropagators props(h);
  return pointwise_step(props, t, dt, coeffs, lambda_prime);
}

StepResult hdr_step(const TermPropagators& props, double t, double dt,
                    const SplitCoefficients& coeffs) {
  const int n_terms = props.num_terms();
  const SplitWindows w = split_windows(lift(coeffs), dt);
  const int q = static_cast<int>(w.right.size());

  GateSequence seq;
  for (int j = 0; j < q; ++j) {
    for (int k = 0; k < n_terms; ++k)
      seq.push({k, GateKind::Integrated, t + w.right[j], t + w.left[j], 1.0});
    for (int k = n_terms - 1; k >= 0; --k)
      seq.push({k, GateKind::Integrated, t + w.left[j + 1], t + w.right[j], 1.0});
  }
  Matrix u = props.sequence_unitary(seq);
  return StepResult{std::move(seq), UnitaryOperator(std::move(u))};
}

StepResult hdr_step(const TimeDepHamiltonian& h, double t, double dt,
                    const SplitCoefficients& coeffs) {
  TermPropagators props(h);
  return hdr_step(props, t, dt, coeffs);
}

double iacs_u(const TimeDepHamiltonian& h, double t, double dt) {
  if (h.num_terms() != 2)
    throw std::invalid_argument("iacs_u: defined for two-term Hamiltonians");
  const Schedule& f1 = h.term(0).schedule;
  const Schedule& f2 = h.term(1).schedule;
  const double beta2 = f2.definite_integral(t, t + dt);
  if (std::abs(beta2) <= 1e-14)
    throw std::runtime_error("iacs_u: beta_2 vanishes, Magnus correction u is singular");
  const double nested = integrate_adaptive(
      [&](double s1) {
        return f1.value(s1) * f2.definite_integral(t, s1) -
               f2.value(s1) * f1.definite_integral(t, s1);
      },
      t, t + dt, 1e-12);
  return nested / (2.0 * beta2);
}

StepResult iacs_step(const TermPropagators& props, double t, double dt,
                     const SplitCoefficients& coeffs) {
  const TimeDepHamiltonian& h = props.hamiltonian();
  if (h.num_terms() != 2)
    throw std::invalid_argument("iacs_step: defined for two-term Hamiltonians");
  const double beta1 = h.term(0).schedule.definite_integral(t, t + dt);
  const double u = iacs_u(h, t, dt);
  const double u_coeff = (u == 0.0) ? 0.0 : u / beta1;

  const int q = coeffs.cycles();
  GateSequence seq;
  for (int i = 0; i <= q; ++i) {
    double c = coeffs.a[i];
    if (i == 0) c += u_coeff;
    if (i == q) c -= u_coeff;
    seq.push({0, GateKind::Integrated, t, t + dt, c});
    if (i < q) seq.push({1, GateKind::Integrated, t, t + dt, coeffs.b[i]});
  }
  Matrix m = props.sequence_unitary(seq);
  return StepResult{std::move(seq), UnitaryOperator(std::move(m))};
}

StepResult iacs_step(const TimeDepHamiltonian& h, double t, double dt) {
  return iacs_step(h, t, dt, find_scheme("FRS"));
}

StepResult iacs_step(const TimeDepHamiltonian& h, double t, double dt,
                     const SplitCoefficients& coeffs) {
  TermPropagators props(h);
  return iacs_step(props, t, dt, coeffs);
}

StepFn make_pointwise_step_fn(const SplitCoefficients& coeffs, int lambda_prime) {
  return [coeffs, lambda_prime](const TermPropagators& props, double t, double dt) {
    return pointwise_step(props, t, dt, coeffs, lambda_prime);
  };
}

StepFn make_hdr_step_fn(const SplitCoefficients& coeffs) {
  return [coeffs](const TermPropagators& props, double t, double dt) {
    return hdr_step(props, t, dt, coeffs);
  };
}

StepFn make_iacs_step_fn(const SplitCoefficients& coeffs) {
  return [coeffs](const TermPropagators& props, double t, double dt) {
    return iacs_step(props, t, dt, coeffs);
  };
}

ComposedEvolution compose_evolution(const StepFn& step, const TimeDepHamiltonian& h,
                                    int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("compose_evolution: need n_steps >= 1");
  TermPropagators props(h);
  const double dt = (h.t_end() - h.t_start()) / n_steps;
  Matrix u = Matrix::Identity(h.dim(), h.dim());
  long long gates = 0;
  for (int i = 0; i < n_steps; ++i) {
    StepResult result = step(props, h.t_start() + i * dt, dt);
    u = result.unitary.matrix() * u;
    gates += result.gates.count();
  }
  return ComposedEvolution{UnitaryOperator(std::move(u)), gates};
}

}  // namespace tdsim
