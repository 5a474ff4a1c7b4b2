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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qamc/encoding.hpp"

namespace qamc {

enum class AEAlgorithm { cae, iqae, mlae, rqae };

std::string_view to_string(AEAlgorithm algorithm);
AEAlgorithm parse_ae_algorithm(std::string_view name);

/// MLAE Grover-exponent schedules by name: lin(n) -> 0, 1, ..., n-1 and
/// exp(n) -> 0, 1, 2, 4, ..., 2^(n-2).
std::vector<std::uint64_t> make_schedule(std::string_view name);
/// The five named schedules swept by default.
std::vector<std::string> default_schedule_names();

struct AEConfig {
  AEAlgorithm algorithm = AEAlgorithm::iqae;
  double epsilon = 1e-3;     ///< target half-width on the amplitude scale
  double alpha = 0.05;       ///< IQAE failure probability
  double gamma = 0.05;       ///< RQAE failure probability
  double q = 2.0;            ///< RQAE amplification ratio
  unsigned aux_qubits = 10;  ///< CAE evaluation register
  std::uint64_t shots = 100;
  std::vector<std::uint64_t> schedule = make_schedule("exp(5)");
  std::size_t ns = 10000;    ///< MLAE grid points
  double delta = 1e-7;       ///< MLAE domain margin
  std::uint64_t seed = 0;
  unsigned stall_rounds = 8; ///< IQAE rounds at fixed k before noting a stall

  /// Validates the fields used by `algorithm`.
  void validate() const;
};

struct RoundLog {
  std::uint64_t k = 0;      ///< Grover power per shot
  std::uint64_t shots = 0;
  std::uint64_t hits = 0;
  double shift = 0.0;       ///< RQAE shift b (0 otherwise)
  double failure_budget = 0.0;
  std::string note;
};

struct AEResult {
  double estimate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  /// Sum over rounds of shots * (2k + 1).
  std::uint64_t oracle_calls = 0;
  std::uint64_t max_grover_power = 0;
  bool is_signed = false;
  std::vector<RoundLog> rounds;
  std::vector<std::string> flags;

  bool has_flag(std::string_view f) const;
};

/// Oracle calls implied by a round log: sum of shots * (2k + 1).
std::uint64_t calls_from_rounds(const std::vector<RoundLog>& rounds);

/// Exact good-state probability of Q^k A|0>, with incremental reuse of the
/// last simulated power and dense powers of Q for deep circuits.
class AmplifiedSampler {
 public:
  explicit AmplifiedSampler(EncodedOracle oracle);

  double probability_after(std::uint64_t k);
  /// Draws `shots` measurements of Q^k A|0>. `probe` is charged the oracle
  /// calls the simulator counted for one execution, times `shots`.
  std::uint64_t sample(std::uint64_t k, std::uint64_t shots, std::uint64_t seed,
                       CallCounter* probe = nullptr);

  const EncodedOracle& oracle() const { return oracle_; }

 private:
  void advance_to(std::uint64_t k);

  EncodedOracle oracle_;
  GateProgram grover_;
  std::optional<PowerLadder> ladder_;
  std::vector<cplx> state_;
  std::uint64_t state_k_ = 0;
  std::uint64_t state_calls_ = 0;
};

/// Phase estimation on Q with `aux_qubits` evaluation qubits.
AEResult cae_estimate(const EncodedOracle& oracle, unsigned aux_qubits,
                      std::uint64_t shots, std::uint64_t seed,
                      CallCounter* probe = nullptr,
                      unsigned qubit_cap = kDefaultQubitCap);

/// Iterative amplitude estimation with Hoeffding intervals.
AEResult iqae_estimate(const EncodedOracle& oracle, double epsilon, double alpha,
                       std::uint64_t shots, std::uint64_t seed,
                       CallCounter* probe = nullptr, unsigned stall_rounds = 8);

/// Maximum-likelihood estimation over a Grover-power schedule, maximized by
/// brute force on `ns` points of [delta, pi/2 - delta].
AEResult mlae_estimate(const EncodedOracle& oracle,
                       const std::vector<std::uint64_t>& schedule,
                       std::uint64_t shots, std::size_t ns, double delta,
                       std::uint64_t seed, CallCounter* probe = nullptr);

/// Grid of log-likelihood values used by MLAE; exposed for kernel tests.
std::vector<double> mlae_log_likelihood(const std::vector<RoundLog>& rounds,
                                        std::size_t ns, double delta,
                                        Backend backend = Backend::openmp);

/// Adds one ancilla so the signed good amplitude becomes (a + b) / 2.
EncodedOracle shift_oracle(const EncodedOracle& oracle, double b);

/// Real amplitude estimation: signed estimate of a = <0|A|0>.
AEResult rqae_estimate(const EncodedOracle& oracle, double epsilon, double gamma,
                       double q, std::uint64_t shots_hint, std::uint64_t seed,
                       CallCounter* probe = nullptr);

/// Dispatches on config.algorithm.
AEResult estimate(const EncodedOracle& oracle, const AEConfig& config,
                  CallCounter* probe = nullptr);

}  // namespace qamc
