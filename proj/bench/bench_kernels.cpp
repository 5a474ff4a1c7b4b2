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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "qamc/amplitude_estimation.hpp"
#include "qamc/kernels.hpp"
#include "qamc/pricing.hpp"
#include "qamc/program.hpp"

namespace {

using namespace qamc;

std::vector<cplx> spread_state(unsigned n) {
  std::vector<cplx> v(std::size_t{1} << n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = norm * std::polar(1.0, 0.1 * static_cast<double>(i % 97));
  return v;
}

template <Backend B>
void BM_ApplyMatrix(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  auto amps = spread_state(n);
  const Matrix h = gates::hadamard();
  const unsigned target[] = {n / 2};
  for (auto _ : state) {
    if constexpr (B == Backend::serial) {
      kernels::serial::apply_matrix(amps, target, h.data, {});
    } else {
      kernels::omp::apply_matrix(amps, target, h.data, {});
    }
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}
BENCHMARK_TEMPLATE(BM_ApplyMatrix, Backend::serial)->DenseRange(12, 22, 5);
BENCHMARK_TEMPLATE(BM_ApplyMatrix, Backend::openmp)->DenseRange(12, 22, 5);

template <Backend B>
void BM_PatternWeight(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto amps = spread_state(n);
  const kernels::BitPattern p{1, 0};
  for (auto _ : state) {
    if constexpr (B == Backend::serial) {
      benchmark::DoNotOptimize(kernels::serial::pattern_weight(amps, p));
    } else {
      benchmark::DoNotOptimize(kernels::omp::pattern_weight(amps, p));
    }
  }
}
BENCHMARK_TEMPLATE(BM_PatternWeight, Backend::serial)->DenseRange(12, 22, 5);
BENCHMARK_TEMPLATE(BM_PatternWeight, Backend::openmp)->DenseRange(12, 22, 5);

template <Backend B>
void BM_CMC(benchmark::State& state) {
  const ModelParams params;
  const auto sde = SDEModel::black_scholes(params);
  CMCConfig cfg;
  cfg.n_paths = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cmc_price(sde, PayoffSpec{}, cfg, params, B).expectation_estimate);
  }
}
BENCHMARK_TEMPLATE(BM_CMC, Backend::serial)->Arg(100000);
BENCHMARK_TEMPLATE(BM_CMC, Backend::openmp)->Arg(100000);

template <Backend B>
void BM_MLAEGrid(benchmark::State& state) {
  std::vector<RoundLog> rounds;
  for (std::uint64_t k : make_schedule("exp(9)")) rounds.push_back({k, 100, 37, 0.0, 0.0, {}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(mlae_log_likelihood(rounds, 10000, 1e-7, B));
  }
}
BENCHMARK_TEMPLATE(BM_MLAEGrid, Backend::serial);
BENCHMARK_TEMPLATE(BM_MLAEGrid, Backend::openmp);

}  // namespace

BENCHMARK_MAIN();
