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

#include "tdsim/slope.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tdsim {

SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                          double window_lo, double window_hi) {
  if (x.size() != y.size())
    throw std::invalid_argument("fit_loglog_slope: length mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) continue;
    if (!(y[i] >= window_lo && y[i] <= window_hi)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const int n = static_cast<int>(lx.size());
  if (n < 3) {
    std::ostringstream msg;
    msg << "fit_loglog_slope: only " << n << " points inside the error window ["
        << window_lo << ", " << window_hi << "], need at least 3";
    throw std::invalid_argument(msg.str());
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (int i = 0; i < n; ++i) {
    mean_x += lx[i];
    mean_y += ly[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mean_x) * (lx[i] - mean_x);
    sxy += (lx[i] - mean_x) * (ly[i] - mean_y);
    syy += (ly[i] - mean_y) * (ly[i] - mean_y);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.points_used = n;
  const double ss_res = syy - sxy * sxy / sxx;
  fit.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace tdsim
