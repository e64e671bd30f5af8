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

#include "tdsim/hamiltonian.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace tdsim {

namespace {

constexpr double kIsingCoupling = -1.0;
constexpr double kIsingLongitudinalField = 0.2;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_eigenpair(const HermitianOperator& h, const QuantumState& v, const char* who) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  const double lambda = es.eigenvalues().minCoeff();
  const Vector residual = h.matrix() * v.amplitudes() - lambda * v.amplitudes();
  const double defect = residual.cwiseAbs().maxCoeff();
  if (defect > 1e-10 * std::max(1.0, std::abs(lambda))) {
    std::ostringstream msg;
    msg << who << ": state is not a ground state (residual " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
}

Schedule ramp_up(double T, ScheduleKind kind) {
  Schedule s;
  if (kind == ScheduleKind::Linear) {
    s = Schedule::affine(0.0, T);
  } else {
    const double w = M_PI / 2.0;
    s.value = [=](double t) { return T * std::sin(w * t); };
    s.derivative = [=](double t) { return T * w * std::cos(w * t); };
    s.definite_integral = [=](double a, double b) {
      return T / w * (std::cos(w * a) - std::cos(w * b));
    };
  }
  s.positive = true;
  return s;
}

Schedule ramp_down(double T, ScheduleKind kind) {
  Schedule up = ramp_up(T, kind);
  Schedule s;
  s.value = [=](double t) { return T - up.value(t); };
  s.derivative = [=](double t) { return -up.derivative(t); };
  s.definite_integral = [=](double a, double b) {
    return T * (b - a) - up.definite_integral(a, b);
  };
  s.positive = true;
  return s;
}

AdiabaticProblem make_adiabatic(const Matrix& h1, const Matrix& h2,
                                QuantumState initial, QuantumState target, double T,
                                ScheduleKind kind) {
  std::vector<LocalTerm> terms;
  terms.push_back({ramp_down(T, kind), HermitianOperator(h1)});
  terms.push_back({ramp_up(T, kind), HermitianOperator(h2)});
  TimeDepHamiltonian ham(std::move(terms), 0.0, 1.0);
  check_eigenpair(ham.term(0).op, initial, "AdiabaticProblem(initial)");
  check_eigenpair(ham.term(1).op, target, "AdiabaticProblem(target)");
  return AdiabaticProblem{std::move(ham), std::move(initial), std::move(target), T};
}

}  // namespace

TimeDepHamiltonian::TimeDepHamiltonian(std::vector<LocalTerm> terms, double t_start,
                                       double t_end)
    : terms_(std::move(terms)), t_start_(t_start), t_end_(t_end) {
  if (terms_.empty())
    throw std::invalid_argument("TimeDepHamiltonian: need at least one term");
  const int d = terms_.front().op.dim();
  for (const LocalTerm& term : terms_)
    if (term.op.dim() != d)
      throw std::invalid_argument("TimeDepHamiltonian: terms differ in dimension");
  if (!(t_start_ <= t_end_))
    throw std::invalid_argument("TimeDepHamiltonian: invalid interval");
}

Matrix TimeDepHamiltonian::evaluate_raw(double t) const {
  Matrix sum = Matrix::Zero(dim(), dim());
  for (const LocalTerm& term : terms_)
    sum += term.schedule.value(t) * term.op.matrix();
  return sum;
}

HermitianOperator TimeDepHamiltonian::evaluate(double t) const {
  return HermitianOperator(evaluate_raw(t));
}

TimeDepHamiltonian TimeDepHamiltonian::clamped() const {
  std::vector<LocalTerm> terms;
  terms.reserve(terms_.size());
  for (const LocalTerm& term : terms_)
    terms.push_back({clamped_schedule(term.schedule, t_start_, t_end_), term.op});
  return TimeDepHamiltonian(std::move(terms), t_start_, t_end_);
}

ScheduleKind schedule_kind_from_string(const std::string& name) {
  if (name == "linear") return ScheduleKind::Linear;
  if (name == "sin") return ScheduleKind::Sin;
  throw std::invalid_argument("unknown schedule kind: " + name);
}

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::Linear ? "linear" : "sin";
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix site_operator(int n_qubits, int site, const Matrix& local) {
  if (site < 0 || site >= n_qubits)
    throw std::invalid_argument("site_operator: site out of range");
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q)
    out = kron(out, q == site ? local : Matrix::Identity(2, 2));
  return out;
}

QuantumState plus_state(int n_qubits) {
  const int dim = 1 << n_qubits;
  Vector v = Vector::Constant(dim, Complex(1.0 / std::sqrt(double(dim)), 0.0));
  return QuantumState(std::move(v));
}

QuantumState random_product_state(int n_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector state = Vector::Ones(1);
  for (int q = 0; q < n_qubits; ++q) {
    const double cos_theta = 2.0 * unit(rng) - 1.0;
    const double theta = std::acos(cos_theta);
    const double phi = 2.0 * M_PI * unit(rng);
    Vector qubit(2);
    qubit << Complex(std::cos(theta / 2.0), 0.0),
        std::exp(Complex(0.0, phi)) * std::sin(theta / 2.0);
    Vector next(state.size() * 2);
    for (int i = 0; i < state.size(); ++i) {
      next(2 * i) = state(i) * qubit(0);
      next(2 * i + 1) = state(i) * qubit(1);
    }
    state = std::move(next);
  }
  state.normalize();
  return QuantumState(std::move(state));
}

Eigen::MatrixXd random_digraph(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution edge(0.5);
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (i != j && edge(rng)) adj(i, j) = 1.0;
  return adj;
}

std::pair<double, QuantumState> ground_state(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix());
  Vector v = es.eigenvectors().col(0);
  // Fix the global phase: largest-magnitude component made real positive.
  int imax = 0;
  for (int i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
  if (std::abs(v(imax)) > 0.0) v *= std::conj(v(imax)) / std::abs(v(imax));
  v.normalize();
  return {es.eigenvalues()(0), QuantumState(std::move(v))};
}

AdiabaticProblem build_grover(int n_qubits, const QuantumState& target, double T,
                              ScheduleKind kind) {
  if (n_qubits < 1) throw std::invalid_argument("build_grover: need n_qubits >= 1");
  const int dim = 1 << n_qubits;
  if (target.dim() != dim)
    throw std::invalid_argument("build_grover: target dimension does not match 2^n");
  const QuantumState plus = plus_state(n_qubits);
  const Matrix eye = Matrix::Identity(dim, dim);
  const Matrix h1 = eye - plus.amplitudes() * plus.amplitudes().adjoint();
  const Matrix h2 = eye - target.amplitudes() * target.amplitudes().adjoint();
  return make_adiabatic(h1, h2, plus, target, T, kind);
}

AdiabaticProblem build_pagerank(const Eigen::MatrixXd& adjacency, double alpha, double T,
                                ScheduleKind kind) {
  const int dim = static_cast<int>(adjacency.rows());
  if (adjacency.cols() != dim || !is_power_of_two(dim))
    throw std::invalid_argument("build_pagerank: adjacency must be square with power-of-two dim");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (adjacency(i, j) != 0.0 && adjacency(i, j) != 1.0)
        throw std::invalid_argument("build_pagerank: adjacency entries must be 0 or 1");

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double degree = adjacency.row(i).sum();
    if (degree > 0.0)
      p.row(i) = adjacency.row(i) / degree;
    else
      p.row(i).setConstant(1.0 / dim);  // dangling node
  }
  const Eigen::MatrixXd google =
      alpha * p.transpose() + (1.0 - alpha) * Eigen::MatrixXd::Constant(dim, dim, 1.0 / dim);
  const Eigen::MatrixXd residual = Eigen::MatrixXd::Identity(dim, dim) - google;
  Eigen::MatrixXd h2_real = residual.transpose() * residual;
  h2_real = 0.5 * (h2_real + h2_real.transpose().eval());

  const int n_qubits = static_cast<int>(std::round(std::log2(dim)));
  const QuantumState plus = plus_state(n_qubits);
  const Matrix h1 = Matrix::Identity(dim, dim) -
                    plus.amplitudes() * plus.amplitudes().adjoint();
  const Matrix h2 = h2_real.cast<Complex>();
  QuantumState target = ground_state(HermitianOperator(h2)).second;
  return make_adiabatic(h1, h2, plus, std::move(target), T, kind);
}

TimeDepHamiltonian build_ising(int length, double h_x) {
  if (length < 2) throw std::invalid_argument("build_ising: need length >= 2");
  const int dim = 1 << length;
  Matrix h1 = Matrix::Zero(dim, dim);
  Matrix h2 = Matrix::Zero(dim, dim);
  for (int j = 0; j < length; ++j) {
    h1 += h_x * site_operator(length, j, pauli_x());
    h2 += kIsingCoupling * site_operator(length, j, pauli_z()) *
              site_operator(length, (j + 1) % length, pauli_z()) +
          kIsingLongitudinalField * site_operator(length, j, pauli_z());
  }

  Schedule f1;
  f1.value = [](double t) { return M_PI * std::sin(M_PI * t); };
  f1.derivative = [](double t) { return M_PI * M_PI * std::cos(M_PI * t); };
  f1.definite_integral = [](double a, double b) {
    return std::cos(M_PI * a) - std::cos(M_PI * b);
  };
  f1.positive = true;

  std::vector<LocalTerm> terms;
  terms.push_back({f1, HermitianOperator(h1)});
  terms.push_back({Schedule::constant(M_PI), HermitianOperator(h2)});
  return TimeDepHamiltonian(std::move(terms), 0.0, 1.0);
}

nlohmann::json to_json(const ProblemSpec& spec) {
  return nlohmann::json{{"kind", spec.kind},         {"size", spec.size},
                        {"schedule", spec.schedule}, {"time_scale", spec.time_scale},
                        {"alpha", spec.alpha},       {"h_x", spec.h_x},
                        {"seed", spec.seed}};
}

ProblemSpec problem_from_json(const nlohmann::json& j) {
  ProblemSpec spec;
  spec.kind = j.value("kind", spec.kind);
  spec.size = j.value("size", spec.size);
  spec.schedule = j.value("schedule", spec.schedule);
  spec.time_scale = j.value("time_scale", spec.time_scale);
  spec.alpha = j.value("alpha", spec.alpha);
  spec.h_x = j.value("h_x", spec.h_x);
  spec.seed = j.value("seed", spec.seed);
  return spec;
}

BuiltProblem build_problem(const ProblemSpec& spec) {
  const ScheduleKind kind = schedule_kind_from_string(spec.schedule);
  if (spec.kind == "grover") {
    AdiabaticProblem p = build_grover(spec.size, random_product_state(spec.size, spec.seed),
                                      spec.time_scale, kind);
    return BuiltProblem{std::move(p.hamiltonian), std::move(p.initial_state)};
  }
  if (spec.kind == "pagerank") {
    AdiabaticProblem p = build_pagerank(random_digraph(1 << spec.size, spec.seed),
                                        spec.alpha, spec.time_scale, kind);
    return BuiltProblem{std::move(p.hamiltonian), std::move(p.initial_state)};
  }
  if (spec.kind == "ising") {
    return BuiltProblem{build_ising(spec.size, spec.h_x), plus_state(spec.size)};
  }
  throw std::invalid_argument("build_problem: unknown problem kind " + spec.kind);
}

}  // namespace tdsim
