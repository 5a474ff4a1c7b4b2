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

#include "qamc/program.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qamc {

// ---------------------------------------------------------------------------
// Matrix helpers

Matrix Matrix::identity(unsigned n_qubits) {
  Matrix m{n_qubits, std::vector<cplx>(std::size_t{1} << (2 * n_qubits))};
  for (std::size_t i = 0; i < m.dim(); ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::real2x2(double m00, double m01, double m10, double m11) {
  return Matrix{1, {m00, m01, m10, m11}};
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.n_qubits != b.n_qubits) {
    throw std::invalid_argument("matrix dimensions differ");
  }
  const std::size_t d = a.dim();
  Matrix out{a.n_qubits, std::vector<cplx>(d * d)};
  for (std::size_t i = 0; i < d; ++i) {
    cplx* row = out.data.data() + i * d;
    for (std::size_t k = 0; k < d; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      const cplx* brow = b.data.data() + k * d;
      for (std::size_t j = 0; j < d; ++j) row[j] += aik * brow[j];
    }
  }
  return out;
}

Matrix dagger(const Matrix& m) {
  const std::size_t d = m.dim();
  Matrix out{m.n_qubits, std::vector<cplx>(d * d)};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

double unitarity_defect(const Matrix& m) {
  const std::size_t d = m.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < d; ++k) acc += std::conj(m(k, i)) * m(k, j);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

bool is_real(const Matrix& m) {
  return std::all_of(m.data.begin(), m.data.end(),
                     [](cplx z) { return z.imag() == 0.0; });
}

namespace gates {

Matrix hadamard() {
  const double h = std::numbers::sqrt2 / 2.0;
  return Matrix::real2x2(h, h, h, -h);
}

Matrix pauli_x() { return Matrix::real2x2(0, 1, 1, 0); }

Matrix ry(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return Matrix::real2x2(c, -s, s, c);
}

Matrix phase(double phi) {
  return Matrix{1, {1.0, 0.0, 0.0, std::polar(1.0, phi)}};
}

Matrix swap() {
  Matrix m{2, std::vector<cplx>(16)};
  m(0, 0) = 1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 3) = 1.0;
  return m;
}

}  // namespace gates

// ---------------------------------------------------------------------------
// GateProgram construction

namespace {

constexpr double kUnitaryTol = 1e-10;

void require_unitary(const Matrix& m) {
  if (m.data.size() != m.dim() * m.dim()) {
    throw std::invalid_argument("matrix storage does not match its dimension");
  }
  const double defect = unitarity_defect(m);
  if (!(defect < kUnitaryTol)) {
    throw std::invalid_argument("matrix is not unitary (defect " +
                                std::to_string(defect) + ")");
  }
}

void require_distinct(const std::vector<unsigned>& qs, const char* what) {
  std::vector<unsigned> s(qs);
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
    throw std::invalid_argument(std::string(what) + " repeat a qubit");
  }
  if (!s.empty() && s.back() >= 62) {
    throw std::invalid_argument(std::string(what) + " index out of range");
  }
}

}  // namespace

void GateProgram::touch(unsigned q) {
  auto it = std::lower_bound(footprint_.begin(), footprint_.end(), q);
  if (it == footprint_.end() || *it != q) footprint_.insert(it, q);
}

void GateProgram::touch_all(std::span<const unsigned> qs) {
  for (unsigned q : qs) touch(q);
}

GateProgram& GateProgram::add_matrix(std::vector<unsigned> targets, Matrix m) {
  if (targets.empty() || targets.size() != m.n_qubits) {
    throw std::invalid_argument("matrix width does not match target count");
  }
  require_distinct(targets, "matrix targets");
  require_unitary(m);
  touch_all(targets);
  steps_.emplace_back(MatrixStep{std::move(targets), std::move(m)});
  return *this;
}

GateProgram& GateProgram::add_multiplexed(std::vector<unsigned> selectors,
                                          unsigned target,
                                          std::vector<Matrix> blocks) {
  if (blocks.size() != (std::size_t{1} << selectors.size())) {
    throw std::invalid_argument("multiplexor needs 2^|selectors| blocks");
  }
  std::vector<unsigned> all(selectors);
  all.push_back(target);
  require_distinct(all, "multiplexor qubits");
  for (const auto& b : blocks) {
    if (b.n_qubits != 1) throw std::invalid_argument("multiplexor blocks must be 2x2");
    require_unitary(b);
  }
  touch_all(all);
  std::vector<cplx> flat;
  flat.reserve(4 * blocks.size());
  for (const auto& b : blocks) flat.insert(flat.end(), b.data.begin(), b.data.end());
  steps_.emplace_back(
      MultiplexedStep{std::move(selectors), target, std::move(blocks), std::move(flat)});
  return *this;
}

GateProgram& GateProgram::add_phase_flip(Projector pattern) {
  for (const auto& [q, bit] : pattern.terms()) touch(q);
  steps_.emplace_back(PhaseFlipStep{std::move(pattern)});
  return *this;
}

GateProgram& GateProgram::add_global_phase(double angle) {
  cplx f = std::polar(1.0, angle);
  if (std::abs(f.imag()) < 1e-15) f = {f.real(), 0.0};
  steps_.emplace_back(GlobalPhaseStep{angle, f});
  return *this;
}

GateProgram& GateProgram::add_controlled(Projector controls, ProgramPtr body) {
  if (!body) throw std::invalid_argument("controlled body is null");
  for (const auto& [q, bit] : controls.terms()) {
    if (std::binary_search(body->footprint().begin(), body->footprint().end(), q)) {
      throw std::invalid_argument("control qubit " + std::to_string(q) +
                                  " is also a target of the controlled body");
    }
    touch(q);
  }
  touch_all(body->footprint());
  steps_.emplace_back(ControlledStep{std::move(controls), std::move(body)});
  return *this;
}

GateProgram& GateProgram::add_oracle_call(ProgramPtr body, std::uint64_t weight) {
  if (!body) throw std::invalid_argument("oracle body is null");
  touch_all(body->footprint());
  steps_.emplace_back(OracleCallStep{std::move(body), weight});
  return *this;
}

GateProgram& GateProgram::append(const GateProgram& other) {
  steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
  touch_all(other.footprint_);
  return *this;
}

unsigned GateProgram::width() const {
  return footprint_.empty() ? 0u : footprint_.back() + 1u;
}

bool GateProgram::is_real() const {
  for (const auto& step : steps_) {
    const bool ok = std::visit(
        [](const auto& s) -> bool {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, MatrixStep>) {
            return qamc::is_real(s.matrix);
          } else if constexpr (std::is_same_v<T, MultiplexedStep>) {
            return std::all_of(s.blocks.begin(), s.blocks.end(),
                               [](const Matrix& b) { return qamc::is_real(b); });
          } else if constexpr (std::is_same_v<T, GlobalPhaseStep>) {
            return s.factor.imag() == 0.0;
          } else if constexpr (std::is_same_v<T, PhaseFlipStep>) {
            return true;
          } else {
            return s.body->is_real();
          }
        },
        step);
    if (!ok) return false;
  }
  return true;
}

GateProgram adjoint(const GateProgram& program) {
  GateProgram out;
  const auto& steps = program.steps();
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    std::visit(
        [&out](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, MatrixStep>) {
            out.add_matrix(s.targets, dagger(s.matrix));
          } else if constexpr (std::is_same_v<T, MultiplexedStep>) {
            std::vector<Matrix> blocks;
            blocks.reserve(s.blocks.size());
            for (const auto& b : s.blocks) blocks.push_back(dagger(b));
            out.add_multiplexed(s.selectors, s.target, std::move(blocks));
          } else if constexpr (std::is_same_v<T, PhaseFlipStep>) {
            out.add_phase_flip(s.pattern);
          } else if constexpr (std::is_same_v<T, GlobalPhaseStep>) {
            out.add_global_phase(-s.angle);
          } else if constexpr (std::is_same_v<T, ControlledStep>) {
            out.add_controlled(s.controls, share(adjoint(*s.body)));
          } else {
            out.add_oracle_call(share(adjoint(*s.body)), s.weight);
          }
        },
        *it);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Application

namespace {

void run(const GateProgram& program, std::span<cplx> amps,
         kernels::BitPattern control, CallCounter* counter, Backend backend) {
  const bool par = backend == Backend::openmp;
  for (const auto& step : program.steps()) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, MatrixStep>) {
            if (par) {
              kernels::omp::apply_matrix(amps, s.targets, s.matrix.data, control);
            } else {
              kernels::serial::apply_matrix(amps, s.targets, s.matrix.data, control);
            }
          } else if constexpr (std::is_same_v<T, MultiplexedStep>) {
            if (par) {
              kernels::omp::apply_multiplexed(amps, s.selectors, s.target, s.flat, control);
            } else {
              kernels::serial::apply_multiplexed(amps, s.selectors, s.target, s.flat, control);
            }
          } else if constexpr (std::is_same_v<T, PhaseFlipStep>) {
            if (par) {
              kernels::omp::phase_flip(amps, s.pattern.pattern(), control);
            } else {
              kernels::serial::phase_flip(amps, s.pattern.pattern(), control);
            }
          } else if constexpr (std::is_same_v<T, GlobalPhaseStep>) {
            if (par) {
              kernels::omp::scale(amps, s.factor, control);
            } else {
              kernels::serial::scale(amps, s.factor, control);
            }
          } else if constexpr (std::is_same_v<T, ControlledStep>) {
            const auto c = s.controls.pattern();
            run(*s.body, amps, {control.mask | c.mask, control.value | c.value},
                counter, backend);
          } else {
            if (counter) counter->calls += s.weight;
            run(*s.body, amps, control, nullptr, backend);
          }
        },
        step);
  }
}

}  // namespace

void apply_in_place(const GateProgram& program, std::span<cplx> amps,
                    CallCounter* counter, Backend backend) {
  if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0) {
    throw std::invalid_argument("amplitude buffer length must be a power of two");
  }
  if (program.width() > 0 &&
      (std::size_t{1} << program.width()) > amps.size()) {
    throw std::invalid_argument("program touches qubit " +
                                std::to_string(program.width() - 1) +
                                " outside the state");
  }
  run(program, amps, {}, counter, backend);
}

QuantumState apply(const GateProgram& program, const QuantumState& state,
                   CallCounter* counter, Backend backend) {
  if (program.width() > state.n_qubits()) {
    throw std::invalid_argument(
        "program footprint (" + std::to_string(program.width()) +
        " qubits) exceeds the state width (" + std::to_string(state.n_qubits()) +
        ")");
  }
  std::vector<cplx> amps(state.amplitudes().begin(), state.amplitudes().end());
  run(program, amps, {}, counter, backend);
  return StateAccess::adopt(state.n_qubits(), std::move(amps));
}

namespace {
GateProgram wrap_dense(Matrix m, std::uint64_t weight);

// Newton-Schulz polar steps, U <- U (3I - U^H U) / 2. Repeated squaring grows
// the unitarity defect linearly in the exponent; this pulls it back to rounding.
Matrix reunitarize(Matrix m) {
  for (int it = 0; it < 3 && unitarity_defect(m) > 1e-14; ++it) {
    Matrix g = dagger(m) * m;
    const std::size_t d = m.dim();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) g(i, j) = (i == j ? 3.0 : 0.0) - g(i, j);
    m = m * g;
    for (auto& z : m.data) z *= 0.5;
  }
  return m;
}
}  // namespace

CompiledProgram compile(const GateProgram& program) {
  const unsigned w = program.width();
  if (w == 0) return {Matrix::identity(1), 0};
  if (w > 12) throw ResourceError("refusing to compile a program wider than 12 qubits");
  const std::size_t d = std::size_t{1} << w;
  CompiledProgram out{Matrix{w, std::vector<cplx>(d * d)}, 0};
  std::vector<cplx> col(d);
  for (std::size_t c = 0; c < d; ++c) {
    std::fill(col.begin(), col.end(), cplx{});
    col[c] = 1.0;
    CallCounter cc;
    run(program, col, {}, &cc, Backend::serial);
    if (c == 0) out.weight = cc.calls;
    for (std::size_t r = 0; r < d; ++r) out.unitary(r, c) = col[r];
  }
  return out;
}

GateProgram power(const GateProgram& program, std::uint64_t k,
                  unsigned dense_limit) {
  GateProgram out;
  if (k == 0 || program.steps().empty()) return out;
  if (program.width() > dense_limit) {
    for (std::uint64_t i = 0; i < k; ++i) out.append(program);
    return out;
  }
  const auto compiled = compile(program);
  Matrix result = Matrix::identity(compiled.unitary.n_qubits);
  Matrix base = compiled.unitary;
  for (std::uint64_t e = k; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = reunitarize(base * base);
  }
  return wrap_dense(reunitarize(std::move(result)), compiled.weight * k);
}

namespace {

GateProgram wrap_dense(Matrix m, std::uint64_t weight) {
  std::vector<unsigned> targets(m.n_qubits);
  for (unsigned q = 0; q < m.n_qubits; ++q) targets[q] = q;
  GateProgram dense;
  dense.add_matrix(std::move(targets), std::move(m));
  if (weight == 0) return dense;
  GateProgram out;
  out.add_oracle_call(share(std::move(dense)), weight);
  return out;
}

}  // namespace

PowerLadder::PowerLadder(const GateProgram& program) {
  auto compiled = compile(program);
  top_ = std::move(compiled.unitary);
  weight_ = compiled.weight;
}

const GateProgram& PowerLadder::level(unsigned j) {
  while (levels_.size() <= j) {
    if (!levels_.empty()) top_ = reunitarize(top_ * top_);
    const std::uint64_t reps = std::uint64_t{1} << levels_.size();
    levels_.push_back(wrap_dense(top_, weight_ * reps));
  }
  return levels_[j];
}

std::uint64_t kernel_passes(const GateProgram& program) {
  std::uint64_t total = 0;
  for (const auto& step : program.steps()) {
    total += std::visit(
        [](const auto& s) -> std::uint64_t {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, ControlledStep> ||
                        std::is_same_v<T, OracleCallStep>) {
            return kernel_passes(*s.body);
          } else if constexpr (std::is_same_v<T, MatrixStep>) {
            return s.matrix.dim();
          } else {
            return 1;
          }
        },
        step);
  }
  return total;
}

GateProgram qft(const std::vector<unsigned>& qubits) {
  GateProgram out;
  const std::size_t m = qubits.size();
  for (std::size_t jj = m; jj-- > 0;) {
    out.add_gate(qubits[jj], gates::hadamard());
    for (std::size_t l = jj; l-- > 0;) {
      const double phi = std::numbers::pi / static_cast<double>(1ull << (jj - l));
      Matrix cp{2, std::vector<cplx>(16)};
      cp(0, 0) = 1.0;
      cp(1, 1) = 1.0;
      cp(2, 2) = 1.0;
      cp(3, 3) = std::polar(1.0, phi);
      out.add_matrix({qubits[l], qubits[jj]}, std::move(cp));
    }
  }
  for (std::size_t i = 0; i < m / 2; ++i) {
    out.add_matrix({qubits[i], qubits[m - 1 - i]}, gates::swap());
  }
  return out;
}

}  // namespace qamc
