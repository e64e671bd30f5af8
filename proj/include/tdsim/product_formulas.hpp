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

#include <functional>
#include <string>
#include <vector>

#include "tdsim/hamiltonian.hpp"
#include "tdsim/operator_core.hpp"
#include "tdsim/splitting.hpp"

namespace tdsim {

enum class GateKind { Pointwise, Integrated };

/// One primitive exponential of a single Hamiltonian term.
///  - Pointwise: exp(-i coeff f_k(t0) h_k); t1 == t0.
///  - Integrated: exp(-i coeff (integral of f_k over [t0, t1]) h_k); the
///    window is signed, t0 > t1 flips the orientation.
struct Gate {
  int term = 0;
  GateKind kind = GateKind::Pointwise;
  double t0 = 0.0;
  double t1 = 0.0;
  double coeff = 0.0;
};

/// Ordered gate list, leftmost factor first. push() merges a gate into the
/// previous one when both act on the same term with exactly equal generators:
/// equal evaluation times for pointwise gates, adjacent windows of equal
/// coefficient (or equal windows) for integrated ones. Structurally null
/// gates (zero coefficient or empty window) are dropped.
class GateSequence {
 public:
  void push(Gate gate);

  const std::vector<Gate>& gates() const { return gates_; }
  int count() const { return static_cast<int>(gates_.size()); }

  /// Line format: `k={index} kind={pw|int} t0={...} t1={...} coeff={...}`.
  std::string to_text() const;

 private:
  std::vector<Gate> gates_;
};

/// Per-term eigendecompositions of a Hamiltonian, so that step construction
/// pays one diagonalization per term rather than one per gate.
class TermPropagators {
 public:
  explicit TermPropagators(const TimeDepHamiltonian& h);

  const TimeDepHamiltonian& hamiltonian() const { return *hamiltonian_; }
  int dim() const { return hamiltonian_->dim(); }
  int num_terms() const { return hamiltonian_->num_terms(); }

  /// exp(-i theta h_k)
  Matrix term_unitary(int k, double theta) const { return caches_[k].unitary(theta); }
  double gate_angle(const Gate& gate) const;
  Matrix gate_unitary(const Gate& gate) const;
  Matrix sequence_unitary(const GateSequence& seq) const;

 private:
  const TimeDepHamiltonian* hamiltonian_;
  std::vector<HermitianExpCache> caches_;
};

struct StepResult {
  GateSequence gates;
  UnitaryOperator unitary;
};

/// Time-independent forward/backward sweep product of exp(dt sum_k A_k) built
/// from lifted coefficients, A_k = -i h_k.
UnitaryOperator lifted_product_unitary(const std::vector<HermitianOperator>& terms,
                                       const LiftedCoefficients& lifted, double dt);

/// One step of the pointwise-query product formula over [t, t + dt]:
/// alternating forward/backward sweeps through the terms, each exponential
/// querying H_k at a single time determined by the split windows.
/// lambda_prime selects how many leading terms are evaluated at the top of
/// each sweep; interior values share the time-independent gate count.
StepResult pointwise_step(const TermPropagators& props, double t, double dt,
                          const SplitCoefficients& coeffs, int lambda_prime = 1);
StepResult pointwise_step(const TimeDepHamiltonian& h, double t, double dt,
                          const SplitCoefficients& coeffs, int lambda_prime = 1);

/// One step of the integrated-query (HDR) product formula over [t, t + dt]:
/// sweeps of exactly integrated local exponentials over the split windows.
StepResult hdr_step(const TermPropagators& props, double t, double dt,
                    const SplitCoefficients& coeffs);
StepResult hdr_step(const TimeDepHamiltonian& h, double t, double dt,
                    const SplitCoefficients& coeffs);

/// One step of the Magnus-based minimum-gate baseline for two-term
/// Hamiltonians: base weights applied to the integrated coefficients beta_k,
/// with the first/last term-1 exponentials shifted by the commutator
/// correction +-u. Requires beta_2 away from zero.
StepResult iacs_step(const TermPropagators& props, double t, double dt,
                     const SplitCoefficients& coeffs);
StepResult iacs_step(const TimeDepHamiltonian& h, double t, double dt);
StepResult iacs_step(const TimeDepHamiltonian& h, double t, double dt,
                     const SplitCoefficients& coeffs);

/// The nested-integral correction u of the Magnus baseline, evaluated by
/// adaptive quadrature over the analytic inner integrals.
double iacs_u(const TimeDepHamiltonian& h, double t, double dt);

using StepFn = std::function<StepResult(const TermPropagators&, double, double)>;

StepFn make_pointwise_step_fn(const SplitCoefficients& coeffs, int lambda_prime = 1);
StepFn make_hdr_step_fn(const SplitCoefficients& coeffs);
StepFn make_iacs_step_fn(const SplitCoefficients& coeffs);

struct ComposedEvolution {
  UnitaryOperator unitary;
  long long gate_count = 0;
};

/// Ordered product of per-step unitaries over n_steps uniform steps spanning
/// the Hamiltonian's interval; gate counts add per step.
ComposedEvolution compose_evolution(const StepFn& step, const TimeDepHamiltonian& h,
                                    int n_steps);

}  // namespace tdsim
