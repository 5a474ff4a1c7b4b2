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

#include <complex>
#include <cstdint>
#include <span>

namespace qamc {

using cplx = std::complex<double>;

namespace kernels {

/// Basis-index predicate `(i & mask) == value` used for controls and
/// projectors.
struct BitPattern {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;

  constexpr bool matches(std::uint64_t i) const { return (i & mask) == value; }
};

/// States at or above this width run the OpenMP kernels in parallel; below it
/// the thread start-up cost dominates.
inline constexpr unsigned kParallelThresholdQubits = 14;

/// Block length for deterministic reductions. Partial sums are formed per
/// block and combined in index order so the result does not depend on the
/// thread count.
inline constexpr std::size_t kReductionBlock = 4096;

// Both namespaces expose the same kernels. `serial` is the out-of-place
// reference used for testing; `omp` is the in-place parallel version used by
// the simulator.
//
// `targets` lists qubit indices; targets[0] is the least significant bit of
// the matrix row/column index. `matrix` is row-major, dimension 2^|targets|.
// `blocks` holds one row-major 2x2 matrix per selector value.

namespace serial {
void apply_matrix(std::span<cplx> amps, std::span<const unsigned> targets,
                  std::span<const cplx> matrix, BitPattern control);
void apply_multiplexed(std::span<cplx> amps, std::span<const unsigned> selectors,
                       unsigned target, std::span<const cplx> blocks,
                       BitPattern control);
void phase_flip(std::span<cplx> amps, BitPattern pattern, BitPattern control);
void scale(std::span<cplx> amps, cplx factor, BitPattern control);
double pattern_weight(std::span<const cplx> amps, BitPattern pattern);
}  // namespace serial

namespace omp {
void apply_matrix(std::span<cplx> amps, std::span<const unsigned> targets,
                  std::span<const cplx> matrix, BitPattern control);
void apply_multiplexed(std::span<cplx> amps, std::span<const unsigned> selectors,
                       unsigned target, std::span<const cplx> blocks,
                       BitPattern control);
void phase_flip(std::span<cplx> amps, BitPattern pattern, BitPattern control);
void scale(std::span<cplx> amps, cplx factor, BitPattern control);
double pattern_weight(std::span<const cplx> amps, BitPattern pattern);
}  // namespace omp

}  // namespace kernels
}  // namespace qamc
