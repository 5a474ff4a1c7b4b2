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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "qamc/error.hpp"
#include "qamc/model.hpp"
#include "qamc/payoff.hpp"
#include "qamc/pricing.hpp"

namespace qamc {
namespace {

// Independent lognormal density for S_T under the default parameters.
double oracle_density(double x, double s0, double r, double sigma, double t) {
  const double mu = std::log(s0) + (r - 0.5 * sigma * sigma) * t;
  const double v = sigma * std::sqrt(t);
  const double z = (std::log(x) - mu) / v;
  return std::exp(-0.5 * z * z) / (x * v * std::sqrt(2.0 * std::numbers::pi));
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

TEST(Model, DensityAtSpot) {
  const ModelParams p;
  EXPECT_NEAR(bs_density(1.0, p), 0.788959, 1e-6);
  EXPECT_NEAR(bs_density(1.0, p), oracle_density(1.0, 1.0, 0.05, 0.5, 1.0), 1e-14);
}

TEST(Model, DensityIntegratesToOneAndMatchesCdf) {
  const ModelParams p;
  const auto f = [&p](double x) { return bs_density(x, p); };
  EXPECT_NEAR(simpson(f, 1e-9, 60.0, 200000), 1.0, 1e-7);
  EXPECT_NEAR(simpson(f, 1e-9, 1.3, 20000), bs_cdf(1.3, p), 1e-8);
}

TEST(Model, AppendixDensity) {
  ModelParams p;
  p.density = DensityMode::appendix;
  const double x = 0.8;
  const double expected = std::exp(-std::pow(std::log(x) - 0.05, 2) / (2 * 0.25)) /
                          (x * 0.5 * std::sqrt(2 * std::numbers::pi));
  EXPECT_NEAR(bs_density(x, p), expected, 1e-14);
}

TEST(Model, RejectsNonPositivePrice) {
  EXPECT_THROW(bs_density(0.0, ModelParams{}), ValidationError);
  EXPECT_THROW(bs_density(-1.0, ModelParams{}), ValidationError);
}

TEST(Discretize, DefaultGrid) {
  const auto m = discretize(ModelParams{}, GridSpec{});
  ASSERT_EQ(m.grid.size(), 32u);
  const double dx = (5.0 - 0.01) / 32.0;
  double total = 0.0, raw = 0.0;
  for (std::size_t i = 0; i < 32; ++i) {
    const double x = 0.01 + (static_cast<double>(i) + 0.5) * dx;
    EXPECT_NEAR(m.grid[i], x, 1e-14);
    raw += oracle_density(x, 1.0, 0.05, 0.5, 1.0) * dx;
    total += m.probs[i];
    EXPECT_GE(m.probs[i], 0.0);
  }
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_NEAR(m.raw_mass, raw, 1e-12);
  for (std::size_t i = 0; i < 32; ++i) {
    EXPECT_NEAR(m.probs[i], oracle_density(m.grid[i], 1.0, 0.05, 0.5, 1.0) * dx / raw, 1e-14);
  }
}

TEST(Discretize, GridMissingTheDistributionFails) {
  GridSpec g;
  g.x_lo = 50.0;
  g.x_hi = 60.0;
  EXPECT_THROW(discretize(ModelParams{}, g), ValidationError);
}

TEST(Discretize, DegenerateDistribution) {
  ModelParams p;
  p.sigma = 1e-6;
  EXPECT_THROW(discretize(p, GridSpec{}), ValidationError);
  GridSpec g;
  g.rule = CellRule::cell_mass;
  const auto m = discretize(p, g);
  int massive = 0;
  for (double q : m.probs) massive += q > 1.0 - 1e-9 ? 1 : 0;
  EXPECT_EQ(massive, 1);
}

TEST(Discretize, Validation) {
  GridSpec g;
  g.x_hi = 0.001;
  EXPECT_THROW(discretize(ModelParams{}, g), ValidationError);
  ModelParams p;
  p.sigma = -0.1;
  EXPECT_THROW(discretize(p, GridSpec{}), ValidationError);
}

TEST(Payoff, Values) {
  EXPECT_DOUBLE_EQ((PayoffSpec{PayoffKind::euro_call, 0.5, 1.0})(1.2), 0.7);
  EXPECT_DOUBLE_EQ((PayoffSpec{PayoffKind::euro_call, 0.5, 1.0})(0.2), 0.0);
  EXPECT_DOUBLE_EQ((PayoffSpec{PayoffKind::euro_put, 1.5, 1.0})(1.2), 0.3);
  EXPECT_DOUBLE_EQ((PayoffSpec{PayoffKind::digital_call, 0.5, 1.0})(0.6), 1.0);
  EXPECT_DOUBLE_EQ((PayoffSpec{PayoffKind::digital_put, 1.5, 1.0})(1.6), 0.0);
  EXPECT_DOUBLE_EQ((PayoffSpec{PayoffKind::futures, 1.5, 1.0})(1.2), 1.2 - 1.5);
  EXPECT_DOUBLE_EQ((PayoffSpec{PayoffKind::futures, 1.0, -1.0})(1.2), -(1.2 - 1.0));
}

TEST(Payoff, ParseAndValidate) {
  EXPECT_EQ(parse_payoff_kind("digital_put"), PayoffKind::digital_put);
  EXPECT_THROW(parse_payoff_kind("asian"), ValidationError);
  EXPECT_THROW((PayoffSpec{PayoffKind::euro_call, -1.0, 1.0}).validate(), ValidationError);
}

TEST(Payoff, ReferenceContracts) {
  const auto c = reference_contracts();
  const PayoffKind kinds[] = {PayoffKind::euro_call, PayoffKind::euro_put,
                              PayoffKind::digital_call, PayoffKind::digital_put,
                              PayoffKind::futures, PayoffKind::futures, PayoffKind::futures};
  const double strikes[] = {0.5, 1.5, 0.5, 1.5, 0.5, 1.0, 1.5};
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(c[i].kind, kinds[i]);
    EXPECT_DOUBLE_EQ(c[i].strike, strikes[i]);
  }
}

TEST(Riemann, ReferenceValues) {
  const auto m = discretize(ModelParams{}, GridSpec{});
  // Grid-level recomputation of P(S_T >= 0.5) with the independent density.
  const double dx = (5.0 - 0.01) / 32.0;
  double raw = 0.0, hit = 0.0, call = 0.0;
  for (int i = 0; i < 32; ++i) {
    const double x = 0.01 + (i + 0.5) * dx;
    const double w = oracle_density(x, 1.0, 0.05, 0.5, 1.0) * dx;
    raw += w;
    hit += x >= 0.5 ? w : 0.0;
    call += std::max(x - 0.5, 0.0) * w;
  }
  const double digital = riemann_expectation(m, {PayoffKind::digital_call, 0.5, 1.0});
  EXPECT_NEAR(digital, hit / raw, 1e-13);
  EXPECT_NEAR(digital, 0.89, 0.025);
  const double euro = riemann_expectation(m, {PayoffKind::euro_call, 0.5, 1.0});
  EXPECT_NEAR(euro, call / raw, 1e-13);
  EXPECT_NEAR(euro, 0.56, 0.005);
}

TEST(Riemann, FuturesAtGridMeanIsZero) {
  const auto m = discretize(ModelParams{}, GridSpec{});
  double mean = 0.0;
  for (std::size_t i = 0; i < m.grid.size(); ++i) mean += m.probs[i] * m.grid[i];
  EXPECT_NEAR(riemann_expectation(m, {PayoffKind::futures, mean, 1.0}), 0.0, 1e-15);
}

}  // namespace
}  // namespace qamc
