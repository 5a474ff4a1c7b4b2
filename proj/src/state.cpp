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

#include "qamc/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "qamc/rng.hpp"

namespace qamc {

void check_width(unsigned n_qubits, unsigned cap) {
  if (n_qubits == 0) {
    throw std::invalid_argument("register width must be at least 1 qubit");
  }
  if (n_qubits > cap) {
    throw ResourceError("requested " + std::to_string(n_qubits) +
                        " qubits exceeds the simulator cap of " +
                        std::to_string(cap));
  }
}

QuantumState::QuantumState(unsigned n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits_ == 0 || n_qubits_ > 62 ||
      amps_.size() != (std::size_t{1} << n_qubits_)) {
    throw std::invalid_argument("amplitude vector length must be 2^n_qubits");
  }
  if (std::abs(norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state is not normalized");
  }
}

double QuantumState::norm() const {
  return std::sqrt(kernels::omp::pattern_weight(amps_, {}));
}

QuantumState zero_state(unsigned n_qubits, unsigned cap) {
  check_width(n_qubits, cap);
  std::vector<cplx> amps(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps[0] = 1.0;
  return StateAccess::adopt(n_qubits, std::move(amps));
}

Projector::Projector(std::vector<Term> terms) : terms_(std::move(terms)) {
  std::set<unsigned> seen;
  for (const auto& [q, bit] : terms_) {
    if (q >= 64) throw std::invalid_argument("projector qubit index out of range");
    if (!seen.insert(q).second) {
      throw std::invalid_argument("projector repeats qubit " + std::to_string(q));
    }
    pattern_.mask |= 1ull << q;
    if (bit) pattern_.value |= 1ull << q;
  }
}

Projector Projector::all_zero(unsigned n_qubits) {
  std::vector<Term> t;
  t.reserve(n_qubits);
  for (unsigned q = 0; q < n_qubits; ++q) t.emplace_back(q, false);
  return Projector(std::move(t));
}

unsigned Projector::max_qubit() const {
  unsigned m = 0;
  for (const auto& [q, bit] : terms_) m = std::max(m, q);
  return m;
}

void Projector::validate(unsigned n_qubits) const {
  for (const auto& [q, bit] : terms_) {
    if (q >= n_qubits) {
      throw std::invalid_argument("projector qubit " + std::to_string(q) +
                                  " outside a " + std::to_string(n_qubits) +
                                  "-qubit register");
    }
  }
}

double probability(const QuantumState& state, const Projector& projector) {
  projector.validate(state.n_qubits());
  return std::clamp(
      kernels::omp::pattern_weight(state.amplitudes(), projector.pattern()), 0.0,
      1.0);
}

double signed_zero_amplitude(const QuantumState& state) {
  const cplx a0 = state[0];
  if (std::abs(a0.imag()) > 1e-10) {
    throw DiagnosticError("zero amplitude has imaginary part " +
                          std::to_string(a0.imag()) +
                          "; oracle is not real-valued");
  }
  return a0.real();
}

std::uint64_t sample_binomial(double p, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");
  p = std::clamp(p, 0.0, 1.0);
  if (p == 0.0) return 0;
  if (p == 1.0) return shots;
  PhiloxEngine engine(seed);
  std::binomial_distribution<std::uint64_t> dist(shots, p);
  return dist(engine);
}

std::uint64_t sample(const QuantumState& state, const Projector& projector,
                     std::uint64_t shots, std::uint64_t seed) {
  return sample_binomial(probability(state, projector), shots, seed);
}

}  // namespace qamc
