// Copyright 2026 The QAMC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

namespace qamc {

/// Which terminal-price density to discretize.
enum class DensityMode {
  /// ln S_T ~ N(ln s_t + (r - sigma^2/2) T, sigma^2 T), the exact
  /// Black-Scholes solution.
  lognormal,
  /// exp(-(ln x - r)^2 / (2 sigma^2 T)) / (x sigma sqrt(2 pi T)), the
  /// simplified appendix form kept for reproducing published data.
  appendix,
};

/// How raw cell weights are formed.
enum class CellRule {
  /// density(x_i) * dx at the cell midpoint (Riemann sum).
  midpoint,
  /// Exact probability mass of each cell from the CDF. Survives degenerate
  /// distributions narrower than a cell.
  cell_mass,
};

/// Black-Scholes underlying. Defaults: S_t = 1, sigma = 0.5, r = 0.05, T = 1.
struct ModelParams {
  double s_t = 1.0;
  double r = 0.05;
  double sigma = 0.5;
  double maturity = 1.0;
  DensityMode density = DensityMode::lognormal;

  void validate() const;
  /// s_t * exp(r T)
  double forward() const;
};

/// Price truncation [x_lo, x_hi] split into 2^n_qubits equal cells.
/// Defaults: [0.01, 5.0] with 5 qubits (32 cells).
struct GridSpec {
  double x_lo = 0.01;
  double x_hi = 5.0;
  unsigned n_qubits = 5;
  CellRule rule = CellRule::midpoint;

  std::size_t intervals() const { return std::size_t{1} << n_qubits; }
  double step() const { return (x_hi - x_lo) / static_cast<double>(intervals()); }
  void validate() const;
};

struct DiscretizedModel {
  std::vector<double> grid;   ///< cell midpoints x_i
  std::vector<double> probs;  ///< normalized p_i
  double raw_mass = 0.0;      ///< sum of weights before normalization
  ModelParams params;
  GridSpec grid_spec;

  unsigned n_qubits() const { return grid_spec.n_qubits; }
};

/// Terminal-price density at x > 0.
double bs_density(double x, const ModelParams& params);

/// Terminal-price CDF at x > 0 under the same density mode.
double bs_cdf(double x, const ModelParams& params);

/// Midpoint grid with normalized cell probabilities. Throws ValidationError
/// when the raw mass is below 1e-6 (the grid misses the distribution).
DiscretizedModel discretize(const ModelParams& params, const GridSpec& grid);

double normal_cdf(double z);

}  // namespace qamc
