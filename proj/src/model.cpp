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

#include "qamc/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qamc/error.hpp"

namespace qamc {
namespace {

// Location and scale of ln S_T.
std::pair<double, double> log_moments(const ModelParams& p) {
  const double scale = p.sigma * std::sqrt(p.maturity);
  if (p.density == DensityMode::appendix) return {p.r, scale};
  return {std::log(p.s_t) + (p.r - 0.5 * p.sigma * p.sigma) * p.maturity, scale};
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

void ModelParams::validate() const {
  if (!(s_t > 0.0)) throw ValidationError("model.s_t", "must be positive");
  if (!(sigma > 0.0)) throw ValidationError("model.sigma", "must be positive");
  if (!(maturity > 0.0)) throw ValidationError("model.maturity", "must be positive");
  if (!std::isfinite(r)) throw ValidationError("model.r", "must be finite");
}

double ModelParams::forward() const { return s_t * std::exp(r * maturity); }

void GridSpec::validate() const {
  if (!(x_lo > 0.0)) throw ValidationError("grid.x_lo", "must be positive");
  if (!(x_hi > x_lo)) throw ValidationError("grid.x_hi", "must exceed x_lo");
  if (n_qubits < 1 || n_qubits > 20) {
    throw ValidationError("grid.n_qubits", "must lie in [1, 20]");
  }
}

double bs_density(double x, const ModelParams& params) {
  if (!(x > 0.0)) {
    throw ValidationError("x", "density is defined for positive prices only");
  }
  const auto [mu, s] = log_moments(params);
  const double z = (std::log(x) - mu) / s;
  return std::exp(-0.5 * z * z) / (x * s * std::sqrt(2.0 * std::numbers::pi));
}

double bs_cdf(double x, const ModelParams& params) {
  if (!(x > 0.0)) return 0.0;
  const auto [mu, s] = log_moments(params);
  return normal_cdf((std::log(x) - mu) / s);
}

DiscretizedModel discretize(const ModelParams& params, const GridSpec& grid) {
  params.validate();
  grid.validate();
  DiscretizedModel m;
  m.params = params;
  m.grid_spec = grid;
  const std::size_t n = grid.intervals();
  const double dx = grid.step();
  m.grid.resize(n);
  m.probs.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = grid.x_lo + static_cast<double>(i) * dx;
    m.grid[i] = lo + 0.5 * dx;
    double w = 0.0;
    if (grid.rule == CellRule::midpoint) {
      w = bs_density(m.grid[i], params) * dx;
    } else {
      w = bs_cdf(lo + dx, params) - bs_cdf(lo, params);
    }
    m.probs[i] = w;
    total += w;
  }
  if (!(total >= 1e-6)) {
    throw ValidationError("grid", "total probability mass " + std::to_string(total) +
                                      " on the grid is below 1e-6");
  }
  m.raw_mass = total;
  for (double& p : m.probs) p /= total;
  return m;
}

}  // namespace qamc
