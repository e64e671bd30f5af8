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
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tdsim/hamiltonian.hpp"
#include "tdsim/slope.hpp"

namespace tdsim {

enum class SchemeFamily { Pointwise, Hdr, Iacs, Mpf, Qdrift, Taylor2 };

SchemeFamily scheme_family_from_string(const std::string& name);
std::string to_string(SchemeFamily family);

struct SchemeSpec {
  SchemeFamily family = SchemeFamily::Hdr;
  std::string base = "Ost4";
  int lambda_prime = 1;           // pointwise placement
  std::vector<int> mpf_k = {1, 2};

  std::string id() const;
};

enum class ErrorMetric { TraceDistance, OperatorNorm };

struct BenchConfig {
  ProblemSpec problem;
  std::vector<SchemeSpec> schemes;
  std::vector<int> n_grid;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  ErrorMetric metric = ErrorMetric::TraceDistance;
  double reference_tol = 1e-12;
  std::string output_csv;
  std::string output_svg;
};

BenchConfig config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BenchConfig& config);

struct BenchRecord {
  std::string scheme;
  std::string base;
  int n_steps = 0;
  long long gates = 0;
  double error = 0.0;
  double seconds = 0.0;
};

/// Runs every (scheme, N) cell, averaging the error over the configured
/// seeds; the comparison target is the reference propagator applied to the
/// problem's initial state (the integration error alone, not the distance to
/// the adiabatic target). Per-record failures are recorded as NaN errors and
/// the run continues.
std::vector<BenchRecord> run_benchmark(const BenchConfig& config);

/// Log-log slope of error against gate count for one scheme's records,
/// restricted to the standard error window.
SlopeFit fit_slope(const std::vector<BenchRecord>& records);

/// CSV with `scheme,base,N,gates,error,seconds` columns after `#` metadata
/// lines. All columns except `seconds` are deterministic for a fixed config.
void emit_csv(const std::vector<BenchRecord>& records, const BenchConfig& config,
              std::ostream& out);
void emit_csv(const std::vector<BenchRecord>& records, const BenchConfig& config,
              const std::string& path);

/// Log-log scatter of error against gate count, one polyline per scheme, with
/// a fourth-order guide line.
void emit_svg(const std::vector<BenchRecord>& records, const BenchConfig& config,
              std::ostream& out);
void emit_svg(const std::vector<BenchRecord>& records, const BenchConfig& config,
              const std::string& path);

}  // namespace tdsim
