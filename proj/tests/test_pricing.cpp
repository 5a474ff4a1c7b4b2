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
#include "qamc/pricing.hpp"

namespace qamc {
namespace {

double lognormal_pdf(double x, double mu, double v) {
  const double z = (std::log(x) - mu) / v;
  return std::exp(-0.5 * z * z) / (x * v * std::sqrt(2.0 * std::numbers::pi));
}

double simpson(const std::function<double(double)>& g, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * g(a + i * h);
  }
  return s * h / 3.0;
}

// E[F(S_T)] by Simpson quadrature in x, split at the payoff kink.
double quadrature(const PayoffSpec& f, const ModelParams& p) {
  const double mu = std::log(p.s_t) + (p.r - 0.5 * p.sigma * p.sigma) * p.maturity;
  const double v = p.sigma * std::sqrt(p.maturity);
  const auto g = [&](double x) { return f(x) * lognormal_pdf(x, mu, v); };
  const double k = f.strike;
  return simpson(g, 1e-9, k * (1 - 1e-13), 200000) + simpson(g, k * (1 + 1e-13), 80.0, 400000);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TEST(ClosedForm, MatchesQuadrature) {
  const ModelParams p;
  for (const auto& c : reference_contracts()) {
    EXPECT_NEAR(closed_form_expectation(c, p), quadrature(c, p), 2e-6) << to_string(c.kind);
  }
}

TEST(ClosedForm, Identities) {
  const ModelParams p;
  EXPECT_NEAR(closed_form_expectation({PayoffKind::futures, p.forward(), 1.0}, p), 0.0, 1e-15);
  EXPECT_NEAR(closed_form_expectation({PayoffKind::futures, 1.5, 1.0}, p),
              std::exp(0.05) - 1.5, 1e-15);
  EXPECT_NEAR(closed_form_expectation({PayoffKind::futures, 1.5, 1.0}, p), -0.4487, 1e-4);
  for (double k : {0.5, 1.0, 1.5}) {
    EXPECT_NEAR(closed_form_expectation({PayoffKind::digital_call, k, 1.0}, p) +
                    closed_form_expectation({PayoffKind::digital_put, k, 1.0}, p),
                1.0, 1e-14);
    EXPECT_NEAR(closed_form_expectation({PayoffKind::euro_call, k, 1.0}, p) -
                    closed_form_expectation({PayoffKind::euro_put, k, 1.0}, p),
                p.forward() - k, 1e-14);
  }
}

TEST(Riemann, GridPutCallParity) {
  const auto m = discretize(ModelParams{}, GridSpec{});
  for (double k : {0.3, 0.5, 1.0, 1.5, 2.5}) {
    EXPECT_NEAR(riemann_expectation(m, {PayoffKind::euro_call, k, 1.0}) -
                    riemann_expectation(m, {PayoffKind::euro_put, k, 1.0}),
                riemann_expectation(m, {PayoffKind::futures, k, 1.0}), 1e-14);
  }
}

TEST(CMC, DeterministicWithoutVolatility) {
  ModelParams p;
  p.sigma = 0.0;
  CMCConfig cfg;
  cfg.n_paths = 100;
  const PayoffSpec call{PayoffKind::euro_call, 0.5, 1.0};
  const auto r = cmc_price(SDEModel::black_scholes(p), call, cfg, p);
  EXPECT_NEAR(r.expectation_estimate, std::exp(0.05) - 0.5, 1e-15);
  EXPECT_EQ(r.std_error, 0.0);
  EXPECT_NEAR(r.abs_error, 0.0, 1e-15);
}

TEST(CMC, FuturesWithinThreeStandardErrors) {
  const ModelParams p;
  CMCConfig cfg;
  cfg.n_paths = 1000000;
  cfg.seed = 99;
  const auto r = cmc_price(SDEModel::black_scholes(p), {PayoffKind::futures, 1.0, 1.0}, cfg, p);
  EXPECT_LE(std::abs(r.expectation_estimate - 0.0513), 3.0 * r.std_error + 1e-4);
  EXPECT_EQ(r.cost, 1000000u);
  EXPECT_DOUBLE_EQ(r.discounted_price, std::exp(-0.05) * r.expectation_estimate);
}

TEST(CMC, BackendsBitIdentical) {
  const ModelParams p;
  CMCConfig cfg;
  cfg.n_paths = 20000;
  cfg.n_steps = 8;
  cfg.scheme = CMCScheme::euler_maruyama;
  cfg.seed = 3;
  const auto sde = SDEModel::black_scholes(p);
  const auto a = cmc_price(sde, PayoffSpec{}, cfg, p, Backend::serial);
  const auto b = cmc_price(sde, PayoffSpec{}, cfg, p, Backend::openmp);
  EXPECT_EQ(a.expectation_estimate, b.expectation_estimate);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.cost, 20000u * 8u);
}

TEST(CMC, EulerBiasShrinksLikeStep) {
  // Without noise the Euler path is s (1 + r dt)^M, so the bias against the
  // exact forward is isolated from sampling error.
  ModelParams p;
  p.sigma = 0.0;
  p.r = 0.5;
  std::vector<double> lx, ly;
  for (std::uint64_t m : {1, 4, 16, 64}) {
    CMCConfig cfg;
    cfg.n_paths = 10;
    cfg.n_steps = m;
    cfg.scheme = CMCScheme::euler_maruyama;
    const auto r = cmc_price(SDEModel::black_scholes(p), {PayoffKind::futures, 1.0, 1.0}, cfg, p);
    EXPECT_NEAR(r.expectation_estimate, std::pow(1.0 + 0.5 / m, m) - 1.0, 1e-12);
    lx.push_back(std::log(static_cast<double>(m)));
    ly.push_back(std::log(r.abs_error));
  }
  EXPECT_NEAR(slope(lx, ly), -1.0, 0.1);
}

TEST(CMC, EulerMeanWithNoise) {
  ModelParams p;
  p.r = 0.5;
  p.sigma = 0.2;
  for (std::uint64_t m : {1, 4}) {
    CMCConfig cfg;
    cfg.n_paths = 400000;
    cfg.n_steps = m;
    cfg.scheme = CMCScheme::euler_maruyama;
    cfg.seed = 12;
    const auto r = cmc_price(SDEModel::black_scholes(p), {PayoffKind::futures, 1.0, 1.0}, cfg, p);
    const double expected = std::pow(1.0 + 0.5 / m, m) - 1.0;
    EXPECT_LE(std::abs(r.expectation_estimate - expected), 4.0 * r.std_error) << m;
  }
}

TEST(CMC, ErrorScalesAsInverseSqrtN) {
  const ModelParams p;
  std::vector<double> lx, ly;
  for (std::uint64_t n : {100, 1000, 10000, 100000}) {
    double total = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      CMCConfig cfg;
      cfg.n_paths = n;
      cfg.seed = 1000 + s;
      total += cmc_price(SDEModel::black_scholes(p), {PayoffKind::futures, 1.0, 1.0}, cfg, p).abs_error;
    }
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(total / 20.0));
  }
  EXPECT_NEAR(slope(lx, ly), -0.5, 0.1);
}

TEST(CMC, FloorAtZero) {
  ModelParams p;
  p.sigma = 3.0;
  CMCConfig cfg;
  cfg.n_paths = 2000;
  cfg.n_steps = 2;
  cfg.scheme = CMCScheme::euler_maruyama;
  cfg.floor_at_zero = true;
  const PayoffSpec put{PayoffKind::euro_put, 1e-9, 1.0};
  const auto floored = cmc_price(SDEModel::black_scholes(p), put, cfg, p);
  EXPECT_LE(floored.expectation_estimate, 1e-9);
  cfg.floor_at_zero = false;
  const auto free = cmc_price(SDEModel::black_scholes(p), put, cfg, p);
  EXPECT_GT(free.expectation_estimate, 0.01);
}

TEST(CMC, ConfigValidation) {
  CMCConfig cfg;
  cfg.n_paths = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
  EXPECT_THROW(parse_cmc_scheme("milstein"), ValidationError);
}

TEST(QAMC, ExactPipelineMatchesRiemann) {
  const auto m = discretize(ModelParams{}, GridSpec{});
  for (const auto& c : reference_contracts()) {
    EXPECT_NEAR(qamc_exact_expectation(m, c, EncodingKind::direct), riemann_expectation(m, c), 1e-10);
    double abs_mean = 0.0;
    for (std::size_t i = 0; i < m.grid.size(); ++i) abs_mean += m.probs[i] * std::abs(c(m.grid[i]));
    EXPECT_NEAR(qamc_exact_expectation(m, c, EncodingKind::sqrt), abs_mean, 1e-10);
  }
}

TEST(QAMC, DirectIqaeCall) {
  const auto m = discretize(ModelParams{}, GridSpec{});
  AEConfig ae;
  ae.algorithm = AEAlgorithm::iqae;
  ae.epsilon = 1e-3;
  int within = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    ae.seed = s;
    const auto r = qamc_price(m, {PayoffKind::euro_call, 0.5, 1.0}, EncodingKind::direct, ae);
    const double f_norm = 5.0 - 0.5 * (5.0 - 0.01) / 32.0 - 0.5;
    within += r.abs_error <= f_norm * 1e-3 ? 1 : 0;
    EXPECT_DOUBLE_EQ(r.discounted_price, std::exp(-0.05) * r.expectation_estimate);
    EXPECT_GT(r.cost, 0u);
  }
  EXPECT_GE(within, 38);
}

TEST(QAMC, SignedFuturesWithRqae) {
  const auto m = discretize(ModelParams{}, GridSpec{});
  AEConfig ae;
  ae.algorithm = AEAlgorithm::rqae;
  ae.epsilon = 1e-3;
  ae.seed = 4;
  const PayoffSpec fut{PayoffKind::futures, 1.5, 1.0};
  const auto r = qamc_price(m, fut, EncodingKind::direct, ae);
  EXPECT_LT(r.expectation_estimate, 0.0);
  EXPECT_LE(r.abs_error, build_oracle(m, fut, EncodingKind::direct).f_norm * 1e-3);
  EXPECT_THROW(qamc_price(m, fut, EncodingKind::sqrt, ae), ValidationError);
}

}  // namespace
}  // namespace qamc
