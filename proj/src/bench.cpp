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

#include "tdsim/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tdsim/multi_product.hpp"
#include "tdsim/product_formulas.hpp"
#include "tdsim/qdrift.hpp"
#include "tdsim/taylor_lcu.hpp"

namespace tdsim {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct ProblemRun {
  BuiltProblem problem;
  TermPropagators props;
  UnitaryOperator reference;
  QuantumState reference_state;

  ProblemRun(BuiltProblem p, double tol)
      : problem(std::move(p)),
        props(problem.hamiltonian),
        reference(reference_propagator(problem.hamiltonian,
                                       problem.hamiltonian.t_start(),
                                       problem.hamiltonian.t_end(), tol)),
        reference_state(Vector(reference.matrix() * problem.initial_state.amplitudes())) {}
};

double state_error(const Vector& candidate, const QuantumState& reference) {
  Vector normalized = candidate;
  normalized.normalize();
  return pure_state_distance(QuantumState(std::move(normalized)), reference);
}

// error and gate count of one (scheme, N) cell on one problem instance
std::pair<double, long long> run_cell(const SchemeSpec& scheme, int n, ErrorMetric metric,
                                      const ProblemRun& run) {
  const TimeDepHamiltonian& h = run.problem.hamiltonian;
  const double span = h.t_end() - h.t_start();
  const double dt = span / n;
  const int n_terms = h.num_terms();

  switch (scheme.family) {
    case SchemeFamily::Pointwise:
    case SchemeFamily::Hdr:
    case SchemeFamily::Iacs: {
      StepFn fn;
      if (scheme.family == SchemeFamily::Pointwise)
        fn = make_pointwise_step_fn(find_scheme(scheme.base), scheme.lambda_prime);
      else if (scheme.family == SchemeFamily::Hdr)
        fn = make_hdr_step_fn(find_scheme(scheme.base));
      else
        fn = make_iacs_step_fn(find_scheme(scheme.base));
      Matrix u = Matrix::Identity(h.dim(), h.dim());
      long long gates = 0;
      for (int i = 0; i < n; ++i) {
        StepResult step = fn(run.props, h.t_start() + i * dt, dt);
        u = step.unitary.matrix() * u;
        gates += step.gates.count();
      }
      const double err = metric == ErrorMetric::OperatorNorm
                             ? spectral_norm(u - run.reference.matrix())
                             : state_error(u * run.problem.initial_state.amplitudes(),
                                           run.reference_state);
      return {err, gates};
    }
    case SchemeFamily::Mpf: {
      const MpfSpec spec = mpf_coefficients(scheme.mpf_k);
      Matrix op = Matrix::Identity(h.dim(), h.dim());
      for (int i = 0; i < n; ++i)
        op = mpf_step_pointwise(run.props, h.t_start() + i * dt, dt, spec) * op;
      long long per_step = 0;
      for (int kj : scheme.mpf_k) per_step += kj * (2LL * n_terms - 1);
      const double err = metric == ErrorMetric::OperatorNorm
                             ? spectral_norm(op - run.reference.matrix())
                             : state_error(op * run.problem.initial_state.amplitudes(),
                                           run.reference_state);
      return {err, per_step * n};
    }
    case SchemeFamily::Qdrift: {
      std::vector<double> weights(n_terms);
      for (int k = 0; k < n_terms; ++k)
        weights[k] =
            std::abs(h.term(k).schedule.definite_integral(h.t_start(), h.t_end()));
      const DiscreteMeasure lambda = DiscreteMeasure::proportional(weights);
      const DensityOperator rho0 = DensityOperator::pure(run.problem.initial_state);
      const DensityOperator evolved = channel_v1_evolution(rho0, h, lambda, dt, n);
      const DensityOperator exact = DensityOperator::pure(run.reference_state);
      // One primitive exponential per step per trajectory.
      return {trace_distance(evolved, exact), static_cast<long long>(n)};
    }
    case SchemeFamily::Taylor2: {
      Matrix op = Matrix::Identity(h.dim(), h.dim());
      for (int i = 0; i < n; ++i)
        op = taylor2_step(h, h.t_start() + i * dt, dt).op * op;
      const double err = metric == ErrorMetric::OperatorNorm
                             ? spectral_norm(op - run.reference.matrix())
                             : state_error(op * run.problem.initial_state.amplitudes(),
                                           run.reference_state);
      // Single-term plus pairwise unitary applications per step.
      return {err, static_cast<long long>(n) * (n_terms + (long long)n_terms * n_terms)};
    }
  }
  throw std::logic_error("run_cell: unhandled scheme family");
}

void xml_escape(std::ostream& out, const std::string& text) {
  for (char c : text) {
    switch (c) {
      case '&': out << "&amp;"; break;
      case '<': out << "&lt;"; break;
      case '>': out << "&gt;"; break;
      case '"': out << "&quot;"; break;
      default: out << c;
    }
  }
}

}  // namespace

SchemeFamily scheme_family_from_string(const std::string& name) {
  if (name == "pointwise") return SchemeFamily::Pointwise;
  if (name == "hdr") return SchemeFamily::Hdr;
  if (name == "iacs") return SchemeFamily::Iacs;
  if (name == "mpf") return SchemeFamily::Mpf;
  if (name == "qdrift") return SchemeFamily::Qdrift;
  if (name == "taylor2") return SchemeFamily::Taylor2;
  throw std::invalid_argument("unknown scheme family: " + name);
}

std::string to_string(SchemeFamily family) {
  switch (family) {
    case SchemeFamily::Pointwise: return "pointwise";
    case SchemeFamily::Hdr: return "hdr";
    case SchemeFamily::Iacs: return "iacs";
    case SchemeFamily::Mpf: return "mpf";
    case SchemeFamily::Qdrift: return "qdrift";
    case SchemeFamily::Taylor2: return "taylor2";
  }
  return "?";
}

std::string SchemeSpec::id() const {
  std::string out = to_string(family);
  switch (family) {
    case SchemeFamily::Pointwise:
      out += "-" + base + "-L" + std::to_string(lambda_prime);
      break;
    case SchemeFamily::Hdr:
    case SchemeFamily::Iacs:
      out += "-" + base;
      break;
    case SchemeFamily::Mpf: {
      out += "-k";
      for (int kj : mpf_k) out += std::to_string(kj);
      break;
    }
    default:
      break;
  }
  return out;
}

BenchConfig config_from_json(const nlohmann::json& j) {
  BenchConfig config;
  if (j.contains("problem")) config.problem = problem_from_json(j.at("problem"));
  if (!j.contains("schemes") || j.at("schemes").empty())
    throw std::invalid_argument("bench config: need at least one scheme");
  for (const auto& js : j.at("schemes")) {
    SchemeSpec scheme;
    scheme.family = scheme_family_from_string(js.at("family").get<std::string>());
    scheme.base = js.value("base", scheme.base);
    scheme.lambda_prime = js.value("lambda_prime", scheme.lambda_prime);
    if (js.contains("mpf_k")) scheme.mpf_k = js.at("mpf_k").get<std::vector<int>>();
    config.schemes.push_back(std::move(scheme));
  }
  config.n_grid = j.at("n_grid").get<std::vector<int>>();
  for (std::size_t i = 0; i + 1 < config.n_grid.size(); ++i)
    if (config.n_grid[i] >= config.n_grid[i + 1])
      throw std::invalid_argument("bench config: n_grid must be strictly increasing");
  if (config.n_grid.empty() || config.n_grid.front() < 1)
    throw std::invalid_argument("bench config: n_grid must hold positive step counts");
  if (j.contains("seeds")) config.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("metric")) {
    const std::string name = j.at("metric").get<std::string>();
    if (name == "trace")
      config.metric = ErrorMetric::TraceDistance;
    else if (name == "operator")
      config.metric = ErrorMetric::OperatorNorm;
    else
      throw std::invalid_argument("bench config: unknown metric " + name);
  }
  config.reference_tol = j.value("reference_tol", config.reference_tol);
  config.output_csv = j.value("output_csv", config.output_csv);
  config.output_svg = j.value("output_svg", config.output_svg);
  return config;
}

nlohmann::json to_json(const BenchConfig& config) {
  nlohmann::json schemes = nlohmann::json::array();
  for (const SchemeSpec& s : config.schemes) {
    nlohmann::json js{{"family", to_string(s.family)}, {"base", s.base}};
    if (s.family == SchemeFamily::Pointwise) js["lambda_prime"] = s.lambda_prime;
    if (s.family == SchemeFamily::Mpf) js["mpf_k"] = s.mpf_k;
    schemes.push_back(std::move(js));
  }
  return nlohmann::json{
      {"problem", to_json(config.problem)},
      {"schemes", schemes},
      {"n_grid", config.n_grid},
      {"seeds", config.seeds},
      {"metric", config.metric == ErrorMetric::TraceDistance ? "trace" : "operator"},
      {"reference_tol", config.reference_tol},
      {"output_csv", config.output_csv},
      {"output_svg", config.output_svg}};
}

std::vector<BenchRecord> run_benchmark(const BenchConfig& config) {
  if (config.schemes.empty())
    throw std::invalid_argument("run_benchmark: need at least one scheme");

  // error sums and timings keyed by (scheme index, N index)
  const std::size_t cells = config.schemes.size() * config.n_grid.size();
  std::vector<double> error_sum(cells, 0.0);
  std::vector<long long> gate_count(cells, 0);
  std::vector<double> seconds(cells, 0.0);
  std::vector<bool> failed(cells, false);

  for (const std::uint64_t seed : config.seeds) {
    ProblemSpec spec = config.problem;
    spec.seed = seed;
    ProblemRun run(build_problem(spec), config.reference_tol);
    for (std::size_t si = 0; si < config.schemes.size(); ++si) {
      for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
        const std::size_t cell = si * config.n_grid.size() + ni;
        const auto start = std::chrono::steady_clock::now();
        try {
          auto [err, gates] =
              run_cell(config.schemes[si], config.n_grid[ni], config.metric, run);
          error_sum[cell] += err;
          gate_count[cell] = gates;
        } catch (const std::exception&) {
          failed[cell] = true;
        }
        seconds[cell] +=
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
      }
    }
  }

  std::vector<BenchRecord> records;
  records.reserve(cells);
  for (std::size_t si = 0; si < config.schemes.size(); ++si) {
    for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
      const std::size_t cell = si * config.n_grid.size() + ni;
      BenchRecord record;
      record.scheme = config.schemes[si].id();
      record.base = config.schemes[si].base;
      record.n_steps = config.n_grid[ni];
      record.gates = gate_count[cell];
      record.error = failed[cell] ? std::numeric_limits<double>::quiet_NaN()
                                  : error_sum[cell] / double(config.seeds.size());
      record.seconds = seconds[cell];
      records.push_back(std::move(record));
    }
  }
  return records;
}

SlopeFit fit_slope(const std::vector<BenchRecord>& records) {
  std::vector<double> x, y;
  for (const BenchRecord& r : records) {
    if (std::isnan(r.error)) continue;
    x.push_back(double(r.gates));
    y.push_back(r.error);
  }
  return fit_loglog_slope(x, y);
}

void emit_csv(const std::vector<BenchRecord>& records, const BenchConfig& config,
              std::ostream& out) {
  if (records.empty()) throw std::invalid_argument("emit_csv: no records to write");
  out << "# tdsim benchmark\n";
  out << "# config: " << to_json(config).dump() << "\n";
  out << "# gates: product families count merged exponentials per step; mpf sums "
         "branch substeps x (2L-1); qdrift counts expected exponentials per "
         "trajectory (one per step); taylor2 counts L + L^2 unitary applications "
         "per step\n";
  out << "scheme,base,N,gates,error,seconds\n";
  for (const BenchRecord& r : records) {
    out << r.scheme << ',' << r.base << ',' << r.n_steps << ',' << r.gates << ','
        << format_double(r.error) << ',' << format_double(r.seconds) << "\n";
  }
}

void emit_csv(const std::vector<BenchRecord>& records, const BenchConfig& config,
              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  emit_csv(records, config, out);
}

void emit_svg(const std::vector<BenchRecord>& records, const BenchConfig& config,
              std::ostream& out) {
  if (records.empty()) throw std::invalid_argument("emit_svg: no records to write");

  double min_x = 1e300, max_x = 0.0, min_y = 1e300, max_y = 0.0;
  std::map<std::string, std::vector<const BenchRecord*>> by_scheme;
  for (const BenchRecord& r : records) {
    if (std::isnan(r.error) || r.error <= 0.0 || r.gates <= 0) continue;
    by_scheme[r.scheme].push_back(&r);
    min_x = std::min(min_x, double(r.gates));
    max_x = std::max(max_x, double(r.gates));
    min_y = std::min(min_y, r.error);
    max_y = std::max(max_y, r.error);
  }
  if (by_scheme.empty()) throw std::invalid_argument("emit_svg: no plottable records");
  if (max_x <= min_x) max_x = min_x * 10.0;
  if (max_y <= min_y) max_y = min_y * 10.0;

  const double width = 720, height = 480;
  const double left = 70, right = 20, top = 20, bottom = 50;
  auto sx = [&](double gates) {
    return left + (std::log10(gates) - std::log10(min_x)) /
                      (std::log10(max_x) - std::log10(min_x)) * (width - left - right);
  };
  auto sy = [&](double error) {
    return top + (std::log10(max_y) - std::log10(error)) /
                     (std::log10(max_y) - std::log10(min_y)) * (height - top - bottom);
  };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\""
      << width - left - right << "\" height=\"" << height - top - bottom
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  // decade grid lines
  for (int d = int(std::ceil(std::log10(min_x))); d <= int(std::floor(std::log10(max_x)));
       ++d) {
    const double px = sx(std::pow(10.0, d));
    out << "<line x1=\"" << px << "\" y1=\"" << top << "\" x2=\"" << px << "\" y2=\""
        << height - bottom << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << height - bottom + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">1e" << d << "</text>\n";
  }
  for (int d = int(std::ceil(std::log10(min_y))); d <= int(std::floor(std::log10(max_y)));
       ++d) {
    const double py = sy(std::pow(10.0, d));
    out << "<line x1=\"" << left << "\" y1=\"" << py << "\" x2=\"" << width - right
        << "\" y2=\"" << py << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << py + 4
        << "\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
  }
  out << "<text x=\"" << (left + width - right) / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">gate count</text>\n";
  out << "<text x=\"16\" y=\"" << (top + height - bottom) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (top + height - bottom) / 2 << ")\">error</text>\n";

  // reference slope -4 guide through the data midpoint
  {
    const double gx = std::sqrt(min_x * max_x);
    const double gy = std::sqrt(min_y * max_y);
    const double x0 = min_x, x1 = max_x;
    const double y0 = gy * std::pow(gx / x0, 4.0);
    const double y1 = gy * std::pow(gx / x1, 4.0);
    auto clamp_y = [&](double y) { return std::min(std::max(y, min_y), max_y); };
    out << "<line x1=\"" << sx(x0) << "\" y1=\"" << sy(clamp_y(y0)) << "\" x2=\""
        << sx(x1) << "\" y2=\"" << sy(clamp_y(y1))
        << "\" stroke=\"#555555\" stroke-dasharray=\"6 4\"/>\n";
  }

  int color = 0;
  double legend_y = top + 16;
  for (const auto& [scheme, points] : by_scheme) {
    const char* stroke = palette[color % 8];
    ++color;
    out << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    for (const BenchRecord* r : points)
      out << sx(double(r->gates)) << "," << sy(r->error) << " ";
    out << "\"/>\n";
    for (const BenchRecord* r : points)
      out << "<circle cx=\"" << sx(double(r->gates)) << "\" cy=\"" << sy(r->error)
          << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
    out << "<text x=\"" << width - right - 180 << "\" y=\"" << legend_y
        << "\" font-size=\"12\" fill=\"" << stroke << "\">";
    xml_escape(out, scheme);
    out << "</text>\n";
    legend_y += 16;
  }
  out << "</svg>\n";
}

void emit_svg(const std::vector<BenchRecord>& records, const BenchConfig& config,
              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_svg: cannot open " + path);
  emit_svg(records, config, out);
}

}  // namespace tdsim
