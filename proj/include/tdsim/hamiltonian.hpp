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

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tdsim/operator_core.hpp"
#include "tdsim/schedule.hpp"

namespace tdsim {

/// One summand H_k(t) = f_k(t) h_k.
struct LocalTerm {
  Schedule schedule;
  HermitianOperator op;
};

/// H(t) = sum_k f_k(t) h_k on a common dimension, with a simulation interval.
class TimeDepHamiltonian {
 public:
  TimeDepHamiltonian(std::vector<LocalTerm> terms, double t_start, double t_end);

  int dim() const { return terms_.front().op.dim(); }
  int num_terms() const { return static_cast<int>(terms_.size()); }
  const LocalTerm& term(int k) const { return terms_[k]; }
  const std::vector<LocalTerm>& terms() const { return terms_; }
  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }

  /// Unvalidated sum, for integrator hot paths.
  Matrix evaluate_raw(double t) const;
  HermitianOperator evaluate(double t) const;

  /// Same terms with every schedule frozen outside the simulation interval by
  /// constant continuation.
  TimeDepHamiltonian clamped() const;

 private:
  std::vector<LocalTerm> terms_;
  double t_start_, t_end_;
};

/// Interpolation H(t) = f1(t) h1 + f2(t) h2 from the ground state of h1 toward
/// the ground state of h2, over the unit interval scaled by time_scale.
struct AdiabaticProblem {
  TimeDepHamiltonian hamiltonian;
  QuantumState initial_state;
  QuantumState target_state;
  double time_scale;
};

enum class ScheduleKind { Linear, Sin };

ScheduleKind schedule_kind_from_string(const std::string& name);
std::string to_string(ScheduleKind kind);

// Pauli matrices and little tensor helpers for building spin Hamiltonians.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix kron(const Matrix& a, const Matrix& b);
/// I x ... x local x ... x I with `local` acting on `site` of n qubits
/// (site 0 is the leftmost tensor factor).
Matrix site_operator(int n_qubits, int site, const Matrix& local);

QuantumState plus_state(int n_qubits);

/// Random single-qubit product state, uniform over the Bloch sphere per qubit.
QuantumState random_product_state(int n_qubits, std::uint64_t seed);

/// Random 0/1 adjacency matrix: each off-diagonal edge present independently
/// with probability 1/2, no self loops.
Eigen::MatrixXd random_digraph(int dim, std::uint64_t seed);

/// Lowest eigenpair of a Hermitian operator.
std::pair<double, QuantumState> ground_state(const HermitianOperator& h);

/// Adiabatic Grover search: h1 = I - |+..+><+..+|, h2 = I - |target><target|,
/// f1 = T(1 - f), f2 = T f with f linear or sin(pi t / 2), t in [0, 1].
AdiabaticProblem build_grover(int n_qubits, const QuantumState& target, double T,
                              ScheduleKind kind);

/// Adiabatic PageRank: h2 = (I - G)^dag (I - G) for the Google matrix
/// G = alpha P^T + (1 - alpha) E built from a 0/1 adjacency matrix; the
/// stationary vector of G spans the kernel of h2.
AdiabaticProblem build_pagerank(const Eigen::MatrixXd& adjacency, double alpha, double T,
                                ScheduleKind kind);

/// Periodic transverse-field Ising chain: h1 = sum_j h_x X_j,
/// h2 = sum_j J Z_j Z_{j+1} + h_z Z_j with J = -1, h_z = 0.2,
/// f1(t) = pi sin(pi t), f2(t) = pi on [0, 1].
TimeDepHamiltonian build_ising(int length, double h_x);

/// Serializable description of a benchmark problem instance.
struct ProblemSpec {
  std::string kind = "grover";  // "grover" | "pagerank" | "ising"
  int size = 2;                 // qubits (grover/pagerank) or chain length (ising)
  std::string schedule = "linear";
  double time_scale = 40.0;
  double alpha = 0.85;   // pagerank damping
  double h_x = -1.0;     // ising transverse field
  std::uint64_t seed = 1;
};

nlohmann::json to_json(const ProblemSpec& spec);
ProblemSpec problem_from_json(const nlohmann::json& j);

struct BuiltProblem {
  TimeDepHamiltonian hamiltonian;
  QuantumState initial_state;
};

BuiltProblem build_problem(const ProblemSpec& spec);

}  // namespace tdsim
