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

#include "qamc/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qamc/error.hpp"
#include "qamc/kernels.hpp"
#include "qamc/rng.hpp"

namespace qamc {
namespace {

struct LogNormal {
  double mu;
  double v;
};

LogNormal log_law(const ModelParams& p) {
  const double v = p.sigma * std::sqrt(p.maturity);
  if (p.density == DensityMode::appendix) return {p.r, v};
  return {std::log(p.s_t) + (p.r - 0.5 * p.sigma * p.sigma) * p.maturity, v};
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace

SDEModel SDEModel::black_scholes(const ModelParams& params) {
  const double r = params.r, sigma = params.sigma;
  return {[r](double, double s) { return r * s; },
          [sigma](double, double s) { return sigma * s; }};
}

std::string_view to_string(CMCScheme scheme) {
  return scheme == CMCScheme::exact_bs ? "exact_bs" : "euler_maruyama";
}

CMCScheme parse_cmc_scheme(std::string_view name) {
  if (name == "exact_bs") return CMCScheme::exact_bs;
  if (name == "euler_maruyama") return CMCScheme::euler_maruyama;
  throw ValidationError("scheme", "unknown scheme '" + std::string(name) + "'");
}

void CMCConfig::validate() const {
  if (n_paths < 1) throw ValidationError("n_paths", "must be at least 1");
  if (n_steps < 1) throw ValidationError("n_steps", "must be at least 1");
}

double riemann_expectation(const DiscretizedModel& model, const PayoffSpec& payoff) {
  double acc = 0.0;
  for (std::size_t i = 0; i < model.grid.size(); ++i) acc += model.probs[i] * payoff(model.grid[i]);
  return acc;
}

double closed_form_expectation(const PayoffSpec& payoff, const ModelParams& params) {
  payoff.validate();
  const auto [mu, v] = log_law(params);
  const double mean = std::exp(mu + 0.5 * v * v);
  const double k = payoff.strike;
  double value = 0.0;
  if (payoff.kind == PayoffKind::futures) {
    value = mean - k;
  } else if (v == 0.0) {
    value = payoff(std::exp(mu)) / payoff.scale;
  } else {
    const double d2 = k > 0.0 ? (mu - std::log(k)) / v : INFINITY;
    const double d1 = d2 + v;
    switch (payoff.kind) {
      case PayoffKind::euro_call: value = mean * normal_cdf(d1) - k * normal_cdf(d2); break;
      case PayoffKind::euro_put: value = k * normal_cdf(-d2) - mean * normal_cdf(-d1); break;
      case PayoffKind::digital_call: value = normal_cdf(d2); break;
      case PayoffKind::digital_put: value = normal_cdf(-d2); break;
      case PayoffKind::futures: break;
    }
  }
  return payoff.scale * value;
}

PriceResult cmc_price(const SDEModel& sde, const PayoffSpec& payoff, const CMCConfig& cfg,
                      const ModelParams& params, Backend backend) {
  cfg.validate();
  payoff.validate();
  if (!(params.sigma >= 0.0) || !(params.s_t > 0.0) || !(params.maturity > 0.0)) {
    throw ValidationError("model", "need s_t > 0, sigma >= 0, maturity > 0");
  }
  if (cfg.scheme == CMCScheme::euler_maruyama && (!sde.drift || !sde.diffusion)) {
    throw ValidationError("sde", "drift and diffusion must be set");
  }
  const std::uint64_t steps = cfg.scheme == CMCScheme::exact_bs ? 1 : cfg.n_steps;
  const double t_total = params.maturity;
  const double dt = t_total / static_cast<double>(steps);
  const double sqrt_dt = std::sqrt(dt);
  const double drift_exact = (params.r - 0.5 * params.sigma * params.sigma) * t_total;
  const double vol_exact = params.sigma * std::sqrt(t_total);

  const auto terminal = [&](std::uint64_t path) {
    if (cfg.scheme == CMCScheme::exact_bs) {
      return params.s_t * std::exp(drift_exact + vol_exact * normal_at(cfg.seed, path, 0));
    }
    double s = params.s_t;
    for (std::uint64_t m = 0; m < steps; ++m) {
      const double t = dt * static_cast<double>(m);
      s += sde.drift(t, s) * dt + sde.diffusion(t, s) * sqrt_dt * normal_at(cfg.seed, path, m);
      if (cfg.floor_at_zero) s = std::max(s, 0.0);
    }
    return s;
  };

  const std::uint64_t chunk = kernels::kReductionBlock;
  const std::uint64_t n_chunks = (cfg.n_paths + chunk - 1) / chunk;
  std::vector<Moments> partial(n_chunks);
  const auto run_chunk = [&](std::uint64_t c) {
    Moments m;
    const std::uint64_t end = std::min(cfg.n_paths, (c + 1) * chunk);
    for (std::uint64_t p = c * chunk; p < end; ++p) {
      const double f = payoff(terminal(p));
      m.sum += f;
      m.sum_sq += f * f;
    }
    partial[c] = m;
  };
  if (backend == Backend::serial) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    const auto n = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for schedule(dynamic) if (n > 1)
    for (std::int64_t c = 0; c < n; ++c) run_chunk(static_cast<std::uint64_t>(c));
  }
  Moments total;
  for (const auto& m : partial) {
    total.sum += m.sum;
    total.sum_sq += m.sum_sq;
  }

  const double n = static_cast<double>(cfg.n_paths);
  PriceResult r;
  r.expectation_estimate = total.sum / n;
  const double var = cfg.n_paths > 1
                         ? std::max(0.0, (total.sum_sq - n * r.expectation_estimate *
                                                             r.expectation_estimate) / (n - 1.0))
                         : 0.0;
  r.std_error = std::sqrt(var / n);
  r.discounted_price = std::exp(-params.r * params.maturity) * r.expectation_estimate;
  r.reference = closed_form_expectation(payoff, params);
  r.abs_error = std::abs(r.expectation_estimate - r.reference);
  r.cost = cfg.n_paths * steps;
  r.ci_lo = r.expectation_estimate - 1.96 * r.std_error;
  r.ci_hi = r.expectation_estimate + 1.96 * r.std_error;
  r.metadata = {{"scheme", std::string(to_string(cfg.scheme))},
                {"n_paths", std::to_string(cfg.n_paths)},
                {"n_steps", std::to_string(steps)},
                {"seed", std::to_string(cfg.seed)}};
  return r;
}

EncodedOracle build_oracle(const DiscretizedModel& model, const PayoffSpec& payoff,
                           EncodingKind encoding) {
  switch (encoding) {
    case EncodingKind::sqrt: return encode_sqrt(model, payoff);
    case EncodingKind::direct: return encode_direct(model, payoff);
    case EncodingKind::synthetic: break;
  }
  throw ValidationError("encoding", "pricing supports sqrt and direct encodings");
}

double readout(const EncodedOracle& oracle, double amplitude) {
  if (oracle.kind == EncodingKind::sqrt) return oracle.f_norm * amplitude * amplitude;
  return oracle.f_norm * amplitude;
}

double qamc_exact_expectation(const DiscretizedModel& model, const PayoffSpec& payoff,
                              EncodingKind encoding) {
  const auto oracle = build_oracle(model, payoff, encoding);
  if (oracle.kind == EncodingKind::sqrt) return oracle.f_norm * good_probability(oracle);
  return oracle.f_norm * signed_amplitude(oracle);
}

PriceResult qamc_price(const DiscretizedModel& model, const PayoffSpec& payoff,
                       EncodingKind encoding, const AEConfig& ae, CallCounter* probe) {
  ae.validate();
  const auto oracle = build_oracle(model, payoff, encoding);
  if (ae.algorithm == AEAlgorithm::rqae && !oracle.is_signed()) {
    throw ValidationError("encoding", "RQAE requires the direct encoding");
  }
  const AEResult est = estimate(oracle, ae, probe);

  PriceResult r;
  r.expectation_estimate = readout(oracle, est.estimate);
  const double lo = readout(oracle, est.ci_lo);
  const double hi = readout(oracle, est.ci_hi);
  r.ci_lo = std::min(lo, hi);
  r.ci_hi = std::max(lo, hi);
  r.discounted_price =
      std::exp(-model.params.r * model.params.maturity) * r.expectation_estimate;
  r.reference = riemann_expectation(model, payoff);
  r.abs_error = std::abs(r.expectation_estimate - r.reference);
  r.cost = est.oracle_calls;
  r.flags = est.flags;
  r.metadata = {{"algorithm", std::string(to_string(ae.algorithm))},
                {"encoding", std::string(to_string(encoding))},
                {"f_norm", std::to_string(oracle.f_norm)},
                {"amplitude", std::to_string(est.estimate)},
                {"rounds", std::to_string(est.rounds.size())},
                {"max_grover_power", std::to_string(est.max_grover_power)}};
  return r;
}

}  // namespace qamc
