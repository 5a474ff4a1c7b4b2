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

#include <string_view>

#include "qamc/model.hpp"
#include "qamc/payoff.hpp"
#include "qamc/program.hpp"

namespace qamc {

enum class EncodingKind {
  /// Payoff square root in the ancilla amplitude; good = ancilla |0>.
  /// Probability of the good state is sum p_i |F_i| / ||F||, sign lost.
  sqrt,
  /// U_S^dagger U_F U_S; the all-zeros amplitude is sum p_i F_i / ||F||,
  /// sign kept.
  direct,
  /// Single-qubit rotation with a chosen signed amplitude (test fixture).
  synthetic,
};

std::string_view to_string(EncodingKind kind);
EncodingKind parse_encoding_kind(std::string_view name);

/// State-preparation circuit A with its good-state projector.
struct EncodedOracle {
  ProgramPtr program;
  Projector good;
  EncodingKind kind = EncodingKind::direct;
  double f_norm = 1.0;  ///< ||F||_inf over the grid
  unsigned data_qubits = 0;
  unsigned ancilla_qubits = 0;

  unsigned n_qubits() const { return data_qubits + ancilla_qubits; }
  /// True when the good amplitude carries a sign (direct, synthetic).
  bool is_signed() const { return kind != EncodingKind::sqrt; }
};

/// Checks the oracle invariants: real program, footprint within the declared
/// registers, positive f_norm. Throws DiagnosticError / ValidationError.
void validate(const EncodedOracle& oracle);

/// Grover-Rudolph state preparation: U_S|0> = sum_i sqrt(p_i) |i>.
GateProgram load_distribution(const DiscretizedModel& model);

EncodedOracle encode_sqrt(const DiscretizedModel& model, const PayoffSpec& payoff);
EncodedOracle encode_direct(const DiscretizedModel& model, const PayoffSpec& payoff);
EncodedOracle synthetic_oracle(double amplitude);

/// Q = A R_init A^dagger R_good, with a -1 global phase so that k
/// applications take the good amplitude sin(theta) to sin((2k+1) theta).
/// Each A / A^dagger is one counted oracle call.
GateProgram grover(const EncodedOracle& oracle);

/// A|0> simulated exactly.
QuantumState prepare(const EncodedOracle& oracle, CallCounter* counter = nullptr);

/// Exact probability of the good projector after A|0>.
double good_probability(const EncodedOracle& oracle);

/// Exact signed good amplitude <0|A|0>. Requires an all-zeros good projector.
double signed_amplitude(const EncodedOracle& oracle);

}  // namespace qamc
