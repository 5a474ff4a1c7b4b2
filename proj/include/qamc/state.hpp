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
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qamc/error.hpp"
#include "qamc/kernels.hpp"

namespace qamc {

/// Default register width cap: 2^26 complex doubles is 1 GiB.
inline constexpr unsigned kDefaultQubitCap = 26;

void check_width(unsigned n_qubits, unsigned cap = kDefaultQubitCap);

/// Dense state vector over `n_qubits` qubits. Qubit q is bit q of the basis
/// index. Immutable once constructed.
class QuantumState {
 public:
  /// Validates length 2^n and unit norm (1e-10).
  QuantumState(unsigned n_qubits, std::vector<cplx> amplitudes);

  unsigned n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;

 private:
  friend class StateAccess;
  struct Unchecked {};
  QuantumState(Unchecked, unsigned n_qubits, std::vector<cplx> amplitudes)
      : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {}

  unsigned n_qubits_;
  std::vector<cplx> amps_;
};

/// Library-internal construction without the norm check (apply output).
class StateAccess {
 public:
  static QuantumState adopt(unsigned n_qubits, std::vector<cplx> amps) {
    return QuantumState(QuantumState::Unchecked{}, n_qubits, std::move(amps));
  }
};

QuantumState zero_state(unsigned n_qubits, unsigned cap = kDefaultQubitCap);

/// Set of (qubit, required bit) conditions; a basis state matches when every
/// condition holds.
class Projector {
 public:
  using Term = std::pair<unsigned, bool>;

  Projector() = default;
  explicit Projector(std::vector<Term> terms);

  /// Every qubit in [0, n_qubits) required to be 0.
  static Projector all_zero(unsigned n_qubits);
  static Projector single(unsigned qubit, bool bit) {
    return Projector({{qubit, bit}});
  }

  const std::vector<Term>& terms() const { return terms_; }
  kernels::BitPattern pattern() const { return pattern_; }
  unsigned max_qubit() const;
  bool empty() const { return terms_.empty(); }

  /// Throws std::invalid_argument when a qubit lies outside the register.
  void validate(unsigned n_qubits) const;

 private:
  std::vector<Term> terms_;
  kernels::BitPattern pattern_;
};

/// Exact probability of the projector's subspace.
double probability(const QuantumState& state, const Projector& projector);

/// Real part of the all-zeros amplitude, sign included. Throws
/// DiagnosticError when the imaginary part exceeds 1e-10.
double signed_zero_amplitude(const QuantumState& state);

/// Number of successes in `shots` Bernoulli(p) draws, seeded.
std::uint64_t sample_binomial(double p, std::uint64_t shots, std::uint64_t seed);

/// Shot sampling of the projector outcome.
std::uint64_t sample(const QuantumState& state, const Projector& projector,
                     std::uint64_t shots, std::uint64_t seed);

}  // namespace qamc
