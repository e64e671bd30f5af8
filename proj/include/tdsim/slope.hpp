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

#include <vector>

namespace tdsim {

inline constexpr double kErrorWindowLo = 1e-10;
inline constexpr double kErrorWindowHi = 1e-2;

struct SlopeFit {
  double slope = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

/// Least-squares slope of log(y) against log(x), keeping points whose y lies
/// inside [window_lo, window_hi]. Throws when fewer than 3 points survive.
SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                          double window_lo = kErrorWindowLo,
                          double window_hi = kErrorWindowHi);

}  // namespace tdsim
