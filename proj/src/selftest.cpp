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

#include "qamc/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "qamc/amplitude_estimation.hpp"
#include "qamc/encoding.hpp"
#include "qamc/pricing.hpp"

namespace qamc {
namespace {

std::string sci(double v) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << v;
  return ss.str();
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("threw: ") + e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_selftest() {
  const DiscretizedModel model = discretize(ModelParams{}, GridSpec{});
  const auto contracts = reference_contracts();
  std::vector<CheckResult> out;

  out.push_back(guarded("direct-encoding-exact", [&] {
    double worst = 0.0;
    for (const auto& c : contracts) {
      const double exact = qamc_exact_expectation(model, c, EncodingKind::direct);
      worst = std::max(worst, std::abs(exact - riemann_expectation(model, c)));
    }
    return CheckResult{"direct-encoding-exact", worst <= 1e-10, "max deviation " + sci(worst)};
  }));

  out.push_back(guarded("sqrt-encoding-exact", [&] {
    double worst = 0.0;
    for (const auto& c : contracts) {
      const auto values = evaluate(c, model.grid);
      double abs_mean = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) abs_mean += model.probs[i] * std::abs(values[i]);
      const double exact = qamc_exact_expectation(model, c, EncodingKind::sqrt);
      worst = std::max(worst, std::abs(exact - abs_mean));
    }
    return CheckResult{"sqrt-encoding-exact", worst <= 1e-10, "max deviation " + sci(worst)};
  }));

  out.push_back(guarded("grover-rotation", [&] {
    const PayoffSpec call{PayoffKind::euro_call, 0.5, 1.0};
    const EncodedOracle oracles[] = {encode_sqrt(model, call), encode_direct(model, call),
                                     synthetic_oracle(0.3)};
    double worst = 0.0;
    for (const auto& o : oracles) {
      const double theta = std::asin(std::sqrt(good_probability(o)));
      AmplifiedSampler sampler(o);
      for (std::uint64_t k = 0; k <= 8; ++k) {
        const double expected = std::pow(std::sin(static_cast<double>(2 * k + 1) * theta), 2);
        worst = std::max(worst, std::abs(sampler.probability_after(k) - expected));
      }
    }
    return CheckResult{"grover-rotation", worst <= 1e-8, "max deviation " + sci(worst)};
  }));

  out.push_back(guarded("backend-agreement", [&] {
    const auto o = encode_direct(model, contracts[0]);
    const auto q = grover(o);
    const auto start = prepare(o);
    const auto a = apply(q, start, nullptr, Backend::serial);
    const auto b = apply(q, start, nullptr, Backend::openmp);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return CheckResult{"backend-agreement", worst <= 1e-12, "max deviation " + sci(worst)};
  }));

  out.push_back(guarded("grid-put-call-parity", [&] {
    double worst = 0.0;
    for (double k : {0.5, 1.0, 1.5}) {
      const double lhs = riemann_expectation(model, {PayoffKind::euro_call, k, 1.0}) -
                         riemann_expectation(model, {PayoffKind::euro_put, k, 1.0});
      worst = std::max(worst,
                       std::abs(lhs - riemann_expectation(model, {PayoffKind::futures, k, 1.0})));
    }
    return CheckResult{"grid-put-call-parity", worst <= 1e-12, "max deviation " + sci(worst)};
  }));

  out.push_back(guarded("discounting", [&] {
    AEConfig ae;
    ae.algorithm = AEAlgorithm::iqae;
    ae.epsilon = 1e-2;
    const auto r = qamc_price(model, contracts[0], EncodingKind::direct, ae);
    const double expected = std::exp(-model.params.r * model.params.maturity) *
                            r.expectation_estimate;
    return CheckResult{"discounting", r.discounted_price == expected,
                       "discounted " + sci(r.discounted_price)};
  }));

  return out;
}

}  // namespace qamc
