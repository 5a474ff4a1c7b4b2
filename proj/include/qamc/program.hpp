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
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "qamc/kernels.hpp"
#include "qamc/state.hpp"

namespace qamc {

/// Square row-major matrix acting on `n_qubits` qubits.
struct Matrix {
  unsigned n_qubits = 0;
  std::vector<cplx> data;

  std::size_t dim() const { return std::size_t{1} << n_qubits; }
  cplx operator()(std::size_t r, std::size_t c) const { return data[r * dim() + c]; }
  cplx& operator()(std::size_t r, std::size_t c) { return data[r * dim() + c]; }

  static Matrix identity(unsigned n_qubits);
  static Matrix real2x2(double m00, double m01, double m10, double m11);
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix dagger(const Matrix& m);
/// max_ij |(U^dagger U - I)_ij|
double unitarity_defect(const Matrix& m);
bool is_real(const Matrix& m);

namespace gates {
Matrix hadamard();
Matrix pauli_x();
/// exp(-i theta Y / 2): [[cos, -sin], [sin, cos]] of theta/2.
Matrix ry(double theta);
/// diag(1, e^{i phi})
Matrix phase(double phi);
Matrix swap();
}  // namespace gates

/// Tally of oracle (A or A^dagger) applications performed by the simulator.
struct CallCounter {
  std::uint64_t calls = 0;
};

enum class Backend { serial, openmp };

class GateProgram;
using ProgramPtr = std::shared_ptr<const GateProgram>;

struct MatrixStep {
  std::vector<unsigned> targets;
  Matrix matrix;
};

/// Uniformly controlled single-qubit gate: blocks[s] acts on `target` when the
/// selector qubits read s (selectors[0] is bit 0 of s).
struct MultiplexedStep {
  std::vector<unsigned> selectors;
  unsigned target = 0;
  std::vector<Matrix> blocks;
  std::vector<cplx> flat;  ///< blocks concatenated, 4 entries each
};

/// Multiplies every basis state matching `pattern` by -1.
struct PhaseFlipStep {
  Projector pattern;
};

struct GlobalPhaseStep {
  double angle = 0.0;
  cplx factor{1.0, 0.0};
};

struct ControlledStep {
  Projector controls;
  ProgramPtr body;
};

/// One application of an oracle worth `weight` calls. Calls nested inside
/// `body` are not counted again.
struct OracleCallStep {
  ProgramPtr body;
  std::uint64_t weight = 1;
};

using Step = std::variant<MatrixStep, MultiplexedStep, PhaseFlipStep,
                          GlobalPhaseStep, ControlledStep, OracleCallStep>;

/// Ordered list of unitary actions, applied first to last.
///
/// Built through the add_* methods, then shared as an immutable value
/// (usually through ProgramPtr). Every matrix is checked for unitarity when
/// added.
class GateProgram {
 public:
  GateProgram() = default;

  GateProgram& add_matrix(std::vector<unsigned> targets, Matrix m);
  GateProgram& add_gate(unsigned target, Matrix m) {
    return add_matrix({target}, std::move(m));
  }
  GateProgram& add_multiplexed(std::vector<unsigned> selectors, unsigned target,
                               std::vector<Matrix> blocks);
  GateProgram& add_phase_flip(Projector pattern);
  GateProgram& add_global_phase(double angle);
  GateProgram& add_controlled(Projector controls, ProgramPtr body);
  GateProgram& add_oracle_call(ProgramPtr body, std::uint64_t weight = 1);
  GateProgram& append(const GateProgram& other);

  const std::vector<Step>& steps() const { return steps_; }
  /// Sorted, distinct qubits touched by any step.
  const std::vector<unsigned>& footprint() const { return footprint_; }
  /// 1 + largest qubit index touched (0 for an empty program).
  unsigned width() const;
  /// True when every matrix and phase is real, i.e. the program is a real
  /// orthogonal transformation.
  bool is_real() const;

 private:
  void touch(unsigned q);
  void touch_all(std::span<const unsigned> qs);

  std::vector<Step> steps_;
  std::vector<unsigned> footprint_;
};

inline ProgramPtr share(GateProgram p) {
  return std::make_shared<const GateProgram>(std::move(p));
}

/// Reversed step order with each step conjugate-transposed.
GateProgram adjoint(const GateProgram& program);

/// Returns the transformed state. Throws std::invalid_argument when the
/// program touches qubits outside the state.
QuantumState apply(const GateProgram& program, const QuantumState& state,
                   CallCounter* counter = nullptr,
                   Backend backend = Backend::openmp);

/// In-place variant over a raw amplitude buffer of length 2^n.
void apply_in_place(const GateProgram& program, std::span<cplx> amps,
                    CallCounter* counter = nullptr,
                    Backend backend = Backend::openmp);

struct CompiledProgram {
  Matrix unitary;           ///< over qubits [0, program.width())
  std::uint64_t weight = 0; ///< oracle calls per application
};

/// Dense unitary of the program over qubits [0, width()).
CompiledProgram compile(const GateProgram& program);

/// P^k as a program. Programs of at most `dense_limit` qubits are compiled and
/// raised by repeated squaring into a single counted dense step; wider ones
/// are repeated step by step.
GateProgram power(const GateProgram& program, std::uint64_t k,
                  unsigned dense_limit = 8);

/// Lazily built dense powers P^(2^j) of a narrow program, each wrapped as a
/// single counted oracle call when P itself calls the oracle.
class PowerLadder {
 public:
  explicit PowerLadder(const GateProgram& program);

  /// P^(2^j)
  const GateProgram& level(unsigned j);
  /// Oracle calls per application of P.
  std::uint64_t weight() const { return weight_; }
  unsigned levels_built() const { return static_cast<unsigned>(levels_.size()); }

 private:
  Matrix top_;
  std::uint64_t weight_;
  std::vector<GateProgram> levels_;
};

/// Number of primitive kernel passes one application of the program makes.
std::uint64_t kernel_passes(const GateProgram& program);

/// Quantum Fourier transform on `qubits` (qubits[0] least significant):
/// |x> -> 2^{-m/2} sum_y exp(2 pi i x y / 2^m) |y>.
GateProgram qft(const std::vector<unsigned>& qubits);

}  // namespace qamc
