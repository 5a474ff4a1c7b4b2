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

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qamc/amplitude_estimation.hpp"
#include "qamc/encoding.hpp"
#include "qamc/model.hpp"
#include "qamc/payoff.hpp"

namespace qamc {

/// dS = drift(t, S) dt + diffusion(t, S) dW
struct SDEModel {
  std::function<double(double, double)> drift;
  std::function<double(double, double)> diffusion;

  /// drift = r S, diffusion = sigma S
  static SDEModel black_scholes(const ModelParams& params);
};

enum class CMCScheme { euler_maruyama, exact_bs };

std::string_view to_string(CMCScheme scheme);
CMCScheme parse_cmc_scheme(std::string_view name);

struct CMCConfig {
  std::uint64_t n_paths = 10000;
  std::uint64_t n_steps = 1;  ///< ignored (treated as 1) by exact_bs
  CMCScheme scheme = CMCScheme::exact_bs;
  std::uint64_t seed = 0;
  bool floor_at_zero = false;  ///< clamp Euler-Maruyama paths at 0

  void validate() const;
};

struct PriceResult {
  double expectation_estimate = 0.0;
  double discounted_price = 0.0;  ///< exp(-rT) * expectation_estimate
  double reference = 0.0;
  double abs_error = 0.0;         ///< |expectation_estimate - reference|
  /// Oracle calls for QAMC, N * M path steps for CMC.
  std::uint64_t cost = 0;
  double std_error = 0.0;         ///< CMC only
  double ci_lo = 0.0;             ///< currency units
  double ci_hi = 0.0;
  std::vector<std::string> flags;
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// sum_i p_i F(x_i)
double riemann_expectation(const DiscretizedModel& model, const PayoffSpec& payoff);

/// Undiscounted E[F(S_T)] under the continuous lognormal law of `params`.
double closed_form_expectation(const PayoffSpec& payoff, const ModelParams& params);

/// Classical Monte Carlo against the closed form. Paths are seeded by
/// (cfg.seed, path, step) and reduced in fixed index-ordered chunks, so both
/// backends return bit-identical results.
PriceResult cmc_price(const SDEModel& sde, const PayoffSpec& payoff, const CMCConfig& cfg,
                      const ModelParams& params, Backend backend = Backend::openmp);

/// Builds the oracle for `encoding`.
EncodedOracle build_oracle(const DiscretizedModel& model, const PayoffSpec& payoff,
                           EncodingKind encoding);

/// Rescales an amplitude estimate to currency: f_norm * a (direct) or
/// f_norm * a^2 (sqrt).
double readout(const EncodedOracle& oracle, double amplitude);

/// Expectation recovered from the simulator's exact amplitude instead of an
/// estimate. Direct encoding returns the signed value.
double qamc_exact_expectation(const DiscretizedModel& model, const PayoffSpec& payoff,
                              EncodingKind encoding);

/// End-to-end QAMC run scored against riemann_expectation.
PriceResult qamc_price(const DiscretizedModel& model, const PayoffSpec& payoff,
                       EncodingKind encoding, const AEConfig& ae,
                       CallCounter* probe = nullptr);

}  // namespace qamc
