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

#include "qamc/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qamc/error.hpp"

namespace qamc {
namespace {

// Real rotation whose first column is (c, s).
Matrix column_rotation(double c, double s) { return Matrix::real2x2(c, -s, s, c); }

double complement(double c) { return std::sqrt(std::max(0.0, 1.0 - c * c)); }

std::vector<unsigned> range(unsigned lo, unsigned hi) {
  std::vector<unsigned> out;
  for (unsigned q = lo; q < hi; ++q) out.push_back(q);
  return out;
}

struct NormalizedPayoff {
  std::vector<double> values;  // F(x_i) / ||F||
  double norm = 0.0;
};

NormalizedPayoff normalize(const DiscretizedModel& model, const PayoffSpec& payoff) {
  payoff.validate();
  NormalizedPayoff out;
  out.values = evaluate(payoff, model.grid);
  for (double v : out.values) out.norm = std::max(out.norm, std::abs(v));
  if (!(out.norm > 0.0)) {
    throw ValidationError("payoff", "payoff is zero on every grid point");
  }
  for (double& v : out.values) v = std::clamp(v / out.norm, -1.0, 1.0);
  return out;
}

bool is_all_zero(const Projector& p, unsigned n_qubits) {
  return p.pattern().value == 0 && p.terms().size() == n_qubits &&
         p.pattern().mask == ((n_qubits >= 64) ? ~0ull : ((1ull << n_qubits) - 1));
}

}  // namespace

std::string_view to_string(EncodingKind kind) {
  switch (kind) {
    case EncodingKind::sqrt: return "sqrt";
    case EncodingKind::direct: return "direct";
    case EncodingKind::synthetic: return "synthetic";
  }
  return "unknown";
}

EncodingKind parse_encoding_kind(std::string_view name) {
  if (name == "sqrt") return EncodingKind::sqrt;
  if (name == "direct") return EncodingKind::direct;
  if (name == "synthetic") return EncodingKind::synthetic;
  throw ValidationError("encoding", "unknown encoding '" + std::string(name) + "'");
}

void validate(const EncodedOracle& oracle) {
  if (!oracle.program) throw ValidationError("oracle", "missing program");
  if (!oracle.program->is_real()) {
    throw DiagnosticError("oracle program is not a real orthogonal circuit");
  }
  if (oracle.program->width() > oracle.n_qubits()) {
    throw ValidationError("oracle", "program touches qubits outside its registers");
  }
  oracle.good.validate(oracle.n_qubits());
  if (!(oracle.f_norm > 0.0)) throw ValidationError("oracle.f_norm", "must be positive");
}

GateProgram load_distribution(const DiscretizedModel& model) {
  const unsigned n = model.n_qubits();
  const auto& p = model.probs;
  GateProgram prog;
  // Top qubit first; each level splits every prefix's mass between its two
  // children with a rotation multiplexed on the already-prepared qubits.
  for (unsigned level = 0; level < n; ++level) {
    const unsigned target = n - 1 - level;
    const std::size_t n_prefix = std::size_t{1} << level;
    const std::size_t span = std::size_t{1} << (target + 1);
    const std::size_t half = span >> 1;
    std::vector<Matrix> blocks;
    blocks.reserve(n_prefix);
    for (std::size_t prefix = 0; prefix < n_prefix; ++prefix) {
      double lower = 0.0, total = 0.0;
      for (std::size_t i = prefix * span; i < (prefix + 1) * span; ++i) {
        total += p[i];
        if (i < prefix * span + half) lower += p[i];
      }
      double c = 1.0, s = 0.0;
      if (total > 0.0) {
        c = std::sqrt(std::clamp(lower / total, 0.0, 1.0));
        s = std::sqrt(std::clamp((total - lower) / total, 0.0, 1.0));
        const double r = std::hypot(c, s);
        c /= r;
        s /= r;
      }
      blocks.push_back(column_rotation(c, s));
    }
    prog.add_multiplexed(range(target + 1, n), target, std::move(blocks));
  }
  return prog;
}

EncodedOracle encode_sqrt(const DiscretizedModel& model, const PayoffSpec& payoff) {
  const auto f = normalize(model, payoff);
  const unsigned n = model.n_qubits();
  std::vector<Matrix> blocks;
  blocks.reserve(f.values.size());
  for (double v : f.values) {
    const double c = std::sqrt(std::abs(v));
    blocks.push_back(column_rotation(c, complement(c)));
  }
  GateProgram prog = load_distribution(model);
  prog.add_multiplexed(range(0, n), n, std::move(blocks));
  EncodedOracle out{share(std::move(prog)), Projector::single(n, false),
                    EncodingKind::sqrt, f.norm, n, 1};
  validate(out);
  return out;
}

EncodedOracle encode_direct(const DiscretizedModel& model, const PayoffSpec& payoff) {
  const auto f = normalize(model, payoff);
  const unsigned n = model.n_qubits();
  std::vector<Matrix> blocks;
  blocks.reserve(f.values.size());
  for (double v : f.values) blocks.push_back(column_rotation(v, complement(v)));
  const GateProgram load = load_distribution(model);
  GateProgram prog = load;
  prog.add_multiplexed(range(0, n), n, std::move(blocks));
  prog.append(adjoint(load));
  EncodedOracle out{share(std::move(prog)), Projector::all_zero(n + 1),
                    EncodingKind::direct, f.norm, n, 1};
  validate(out);
  return out;
}

EncodedOracle synthetic_oracle(double amplitude) {
  if (!(std::abs(amplitude) <= 1.0)) {
    throw ValidationError("amplitude", "must lie in [-1, 1]");
  }
  GateProgram prog;
  prog.add_gate(0, column_rotation(amplitude, complement(amplitude)));
  EncodedOracle out{share(std::move(prog)), Projector::single(0, false),
                    EncodingKind::synthetic, 1.0, 1, 0};
  validate(out);
  return out;
}

GateProgram grover(const EncodedOracle& oracle) {
  validate(oracle);
  const unsigned n = oracle.n_qubits();
  GateProgram q;
  q.add_phase_flip(oracle.good);
  q.add_oracle_call(share(adjoint(*oracle.program)));
  q.add_phase_flip(Projector::all_zero(n));
  q.add_oracle_call(oracle.program);
  q.add_global_phase(std::numbers::pi);
  return q;
}

QuantumState prepare(const EncodedOracle& oracle, CallCounter* counter) {
  GateProgram a;
  a.add_oracle_call(oracle.program);
  return apply(a, zero_state(oracle.n_qubits()), counter);
}

double good_probability(const EncodedOracle& oracle) {
  return probability(prepare(oracle), oracle.good);
}

double signed_amplitude(const EncodedOracle& oracle) {
  if (!is_all_zero(oracle.good, oracle.n_qubits())) {
    throw ValidationError("oracle.good",
                          "signed amplitude needs an all-zeros good projector");
  }
  return signed_zero_amplitude(prepare(oracle));
}

}  // namespace qamc
