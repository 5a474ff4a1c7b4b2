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
#include <numbers>

#include "qamc/error.hpp"
#include "qamc/program.hpp"
#include "qamc/state.hpp"

namespace qamc {
namespace {

constexpr double kPi = std::numbers::pi;

GateProgram sample_program() {
  GateProgram p;
  p.add_gate(0, gates::hadamard());
  p.add_gate(1, gates::ry(0.7));
  p.add_controlled(Projector::single(0, true),
                   share(GateProgram().add_gate(2, gates::phase(0.4))));
  p.add_multiplexed({0, 1}, 2, {gates::ry(0.1), gates::ry(0.2), gates::ry(0.3), gates::ry(0.4)});
  p.add_phase_flip(Projector({{0, false}, {2, true}}));
  p.add_global_phase(0.25);
  return p;
}

double max_abs(const Matrix& m) {
  double worst = 0.0;
  for (auto v : m.data) worst = std::max(worst, std::abs(v));
  return worst;
}

TEST(State, ValidatesNormAndLength) {
  EXPECT_THROW(QuantumState(1, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(QuantumState(2, {1.0, 0.0}), std::invalid_argument);
  EXPECT_NO_THROW(QuantumState(1, {0.6, 0.8}));
}

TEST(State, WidthCap) {
  EXPECT_THROW(check_width(27), ResourceError);
  EXPECT_THROW(zero_state(5, 4), ResourceError);
  EXPECT_NO_THROW(check_width(26));
}

TEST(Simulator, HadamardGivesEqualSuperposition) {
  GateProgram p;
  p.add_gate(0, gates::hadamard());
  const auto s = apply(p, zero_state(1));
  EXPECT_NEAR(s[0].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(s[1].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(probability(s, Projector::single(0, true)), 0.5, 1e-15);
}

TEST(Simulator, RejectsNonUnitaryMatrix) {
  GateProgram p;
  EXPECT_THROW(p.add_gate(0, Matrix::real2x2(1, 1, 0, 1)), std::invalid_argument);
}

TEST(Simulator, RejectsOutOfRangeQubit) {
  GateProgram p;
  p.add_gate(3, gates::hadamard());
  EXPECT_THROW(apply(p, zero_state(2)), std::invalid_argument);
}

TEST(Simulator, RejectsControlOverlappingBody) {
  GateProgram p;
  EXPECT_THROW(p.add_controlled(Projector::single(0, true),
                                share(GateProgram().add_gate(0, gates::pauli_x()))),
               std::invalid_argument);
}

TEST(Simulator, BackendsAgree) {
  const auto p = sample_program();
  GateProgram prep;
  prep.add_gate(2, gates::hadamard());
  const auto start = apply(prep, zero_state(3));
  const auto a = apply(p, start, nullptr, Backend::serial);
  const auto b = apply(p, start, nullptr, Backend::openmp);
  for (std::size_t i = 0; i < a.dim(); ++i) EXPECT_LE(std::abs(a[i] - b[i]), 1e-14);
}

TEST(Simulator, AdjointInverts) {
  const auto p = sample_program();
  GateProgram round_trip = p;
  round_trip.append(adjoint(p));
  const Matrix u = compile(round_trip).unitary;
  const Matrix id = Matrix::identity(u.n_qubits);
  Matrix diff = u;
  for (std::size_t i = 0; i < diff.data.size(); ++i) diff.data[i] -= id.data[i];
  EXPECT_LE(max_abs(diff), 1e-13);
}

TEST(Simulator, CompiledUnitaryIsUnitary) {
  EXPECT_LE(unitarity_defect(compile(sample_program()).unitary), 1e-13);
}

TEST(Simulator, PowerMatchesRepetition) {
  const auto p = sample_program();
  EXPECT_TRUE(power(p, 0).steps().empty());
  for (std::uint64_t k : {1ull, 5ull, 13ull}) {
    GateProgram repeated;
    for (std::uint64_t i = 0; i < k; ++i) repeated.append(p);
    const auto dense = compile(power(p, k)).unitary;
    const auto ref = compile(repeated).unitary;
    ASSERT_EQ(dense.data.size(), ref.data.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < ref.data.size(); ++i) {
      worst = std::max(worst, std::abs(dense.data[i] - ref.data[i]));
    }
    EXPECT_LE(worst, 1e-12) << "k=" << k;
  }
}

TEST(Simulator, OracleCallsCounted) {
  GateProgram body;
  body.add_gate(0, gates::ry(0.3));
  GateProgram inner;
  inner.add_oracle_call(share(body));
  GateProgram outer;
  outer.add_oracle_call(share(inner), 3);  // nested call is not counted again
  outer.add_oracle_call(share(body));
  CallCounter cc;
  apply(outer, zero_state(1), &cc);
  EXPECT_EQ(cc.calls, 4u);
}

TEST(Simulator, PowerLadderCounts) {
  GateProgram body;
  body.add_gate(0, gates::ry(0.3));
  GateProgram q;
  q.add_oracle_call(share(body));
  q.add_oracle_call(share(body));
  PowerLadder ladder(q);
  EXPECT_EQ(ladder.weight(), 2u);
  CallCounter cc;
  apply(ladder.level(4), zero_state(1), &cc);
  EXPECT_EQ(cc.calls, 2u * 16u);
  const auto s = apply(ladder.level(4), zero_state(1));
  EXPECT_NEAR(s[1].real(), std::sin(0.3 * 32 / 2), 1e-12);
}

TEST(Simulator, DeepLadderStaysUnitary) {
  PowerLadder ladder(sample_program());
  for (unsigned j : {10u, 20u, 30u}) {
    const auto u = compile(ladder.level(j)).unitary;
    EXPECT_LE(unitarity_defect(u), 1e-12) << "level " << j;
  }
  EXPECT_LE(unitarity_defect(compile(power(sample_program(), (1ull << 30) + 7)).unitary), 1e-12);
}

TEST(Simulator, QftMatchesDft) {
  const std::vector<unsigned> qubits{0, 1, 2};
  const Matrix u = compile(qft(qubits)).unitary;
  const double m = 8.0;
  for (std::size_t y = 0; y < 8; ++y) {
    for (std::size_t x = 0; x < 8; ++x) {
      const cplx expected = std::polar(1.0 / std::sqrt(m), 2.0 * kPi * double(x * y) / m);
      EXPECT_LE(std::abs(u(y, x) - expected), 1e-12) << x << "," << y;
    }
  }
}

TEST(Simulator, SignedZeroAmplitude) {
  GateProgram p;
  p.add_gate(0, gates::ry(2.0 * kPi - 1.0));  // cos(pi - 0.5) < 0
  EXPECT_NEAR(signed_zero_amplitude(apply(p, zero_state(1))), -std::cos(0.5), 1e-14);
  GateProgram c;
  c.add_gate(0, gates::phase(0.3));
  c.add_gate(0, gates::hadamard());
  c.add_gate(0, gates::phase(0.3));
  c.add_gate(0, gates::hadamard());
  EXPECT_THROW(signed_zero_amplitude(apply(c, zero_state(1))), DiagnosticError);
}

TEST(Sampling, FrequencyNearProbability) {
  GateProgram p;
  p.add_gate(0, gates::ry(2.0 * std::asin(std::sqrt(0.3))));
  const auto s = apply(p, zero_state(1));
  const auto hits = sample(s, Projector::single(0, true), 100000, 1);
  EXPECT_NEAR(hits / 100000.0, 0.3, 0.006);
}

}  // namespace
}  // namespace qamc
