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

#include "qamc/kernels.hpp"

#include <algorithm>
#include <bit>
#include <vector>

namespace qamc::kernels {
namespace {

std::uint64_t gather_bits(std::uint64_t i, std::span<const unsigned> qubits) {
  std::uint64_t out = 0;
  for (std::size_t t = 0; t < qubits.size(); ++t) {
    out |= ((i >> qubits[t]) & 1ull) << t;
  }
  return out;
}

std::uint64_t scatter_bits(std::uint64_t v, std::span<const unsigned> qubits) {
  std::uint64_t out = 0;
  for (std::size_t t = 0; t < qubits.size(); ++t) {
    out |= ((v >> t) & 1ull) << qubits[t];
  }
  return out;
}

std::uint64_t bit_mask(std::span<const unsigned> qubits) {
  std::uint64_t m = 0;
  for (unsigned q : qubits) m |= 1ull << q;
  return m;
}

// Insert a zero bit at every position in `sorted` (ascending) into `j`.
inline std::uint64_t insert_zeros(std::uint64_t j,
                                  std::span<const unsigned> sorted) {
  for (unsigned q : sorted) {
    const std::uint64_t lo = j & ((1ull << q) - 1);
    j = ((j >> q) << (q + 1)) | lo;
  }
  return j;
}

inline bool parallel_worthwhile(std::size_t dim) {
  return dim >= (std::size_t{1} << kParallelThresholdQubits);
}

}  // namespace

// ---------------------------------------------------------------------------
// Serial reference: pull-based, out-of-place, one output amplitude at a time.

namespace serial {

void apply_matrix(std::span<cplx> amps, std::span<const unsigned> targets,
                  std::span<const cplx> matrix, BitPattern control) {
  const std::vector<cplx> in(amps.begin(), amps.end());
  const std::uint64_t tmask = bit_mask(targets);
  const std::uint64_t d = 1ull << targets.size();
  for (std::uint64_t i = 0; i < in.size(); ++i) {
    if (!control.matches(i)) continue;
    const std::uint64_t row = gather_bits(i, targets);
    const std::uint64_t base = i & ~tmask;
    cplx acc = 0.0;
    for (std::uint64_t col = 0; col < d; ++col) {
      acc += matrix[row * d + col] * in[base | scatter_bits(col, targets)];
    }
    amps[i] = acc;
  }
}

void apply_multiplexed(std::span<cplx> amps, std::span<const unsigned> selectors,
                       unsigned target, std::span<const cplx> blocks,
                       BitPattern control) {
  const std::vector<cplx> in(amps.begin(), amps.end());
  const std::uint64_t tbit = 1ull << target;
  for (std::uint64_t i = 0; i < in.size(); ++i) {
    if (!control.matches(i)) continue;
    const std::uint64_t sel = gather_bits(i, selectors);
    const cplx* m = blocks.data() + 4 * sel;
    const std::uint64_t row = (i >> target) & 1ull;
    const std::uint64_t base = i & ~tbit;
    amps[i] = m[2 * row] * in[base] + m[2 * row + 1] * in[base | tbit];
  }
}

void phase_flip(std::span<cplx> amps, BitPattern pattern, BitPattern control) {
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (control.matches(i) && pattern.matches(i)) amps[i] = -amps[i];
  }
}

void scale(std::span<cplx> amps, cplx factor, BitPattern control) {
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (control.matches(i)) amps[i] *= factor;
  }
}

double pattern_weight(std::span<const cplx> amps, BitPattern pattern) {
  const std::size_t n_blocks =
      (amps.size() + kReductionBlock - 1) / kReductionBlock;
  double total = 0.0;
  for (std::size_t b = 0; b < n_blocks; ++b) {
    double partial = 0.0;
    const std::size_t end = std::min(amps.size(), (b + 1) * kReductionBlock);
    for (std::size_t i = b * kReductionBlock; i < end; ++i) {
      if (pattern.matches(i)) partial += std::norm(amps[i]);
    }
    total += partial;
  }
  return total;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP: push-based, in-place, one amplitude group per iteration.

namespace omp {

void apply_matrix(std::span<cplx> amps, std::span<const unsigned> targets,
                  std::span<const cplx> matrix, BitPattern control) {
  const std::size_t k = targets.size();
  const std::uint64_t d = 1ull << k;
  std::vector<unsigned> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint64_t> offsets(d);
  for (std::uint64_t c = 0; c < d; ++c) offsets[c] = scatter_bits(c, targets);

  const auto n_groups = static_cast<std::int64_t>(amps.size() >> k);
  const std::uint64_t* off = offsets.data();
  const cplx* m = matrix.data();
  cplx* a = amps.data();

  if (k == 1) {
    const std::uint64_t o1 = off[1];
    const cplx m00 = m[0], m01 = m[1], m10 = m[2], m11 = m[3];
    const unsigned q = sorted[0];
#pragma omp parallel for if (parallel_worthwhile(amps.size())) schedule(static)
    for (std::int64_t j = 0; j < n_groups; ++j) {
      const std::uint64_t lo = static_cast<std::uint64_t>(j) & ((1ull << q) - 1);
      const std::uint64_t base = ((static_cast<std::uint64_t>(j) >> q) << (q + 1)) | lo;
      if (!control.matches(base)) continue;
      const cplx v0 = a[base];
      const cplx v1 = a[base | o1];
      a[base] = m00 * v0 + m01 * v1;
      a[base | o1] = m10 * v0 + m11 * v1;
    }
    return;
  }

#pragma omp parallel if (parallel_worthwhile(amps.size()))
  {
    std::vector<cplx> buf(d);
#pragma omp for schedule(static)
    for (std::int64_t j = 0; j < n_groups; ++j) {
      const std::uint64_t base =
          insert_zeros(static_cast<std::uint64_t>(j), sorted);
      if (!control.matches(base)) continue;
      for (std::uint64_t c = 0; c < d; ++c) buf[c] = a[base | off[c]];
      for (std::uint64_t r = 0; r < d; ++r) {
        cplx acc = 0.0;
        const cplx* row = m + r * d;
        for (std::uint64_t c = 0; c < d; ++c) acc += row[c] * buf[c];
        a[base | off[r]] = acc;
      }
    }
  }
}

void apply_multiplexed(std::span<cplx> amps, std::span<const unsigned> selectors,
                       unsigned target, std::span<const cplx> blocks,
                       BitPattern control) {
  const std::uint64_t tbit = 1ull << target;
  const auto n_groups = static_cast<std::int64_t>(amps.size() >> 1);
  cplx* a = amps.data();
  const cplx* blk = blocks.data();
#pragma omp parallel for if (parallel_worthwhile(amps.size())) schedule(static)
  for (std::int64_t j = 0; j < n_groups; ++j) {
    const auto uj = static_cast<std::uint64_t>(j);
    const std::uint64_t base = ((uj >> target) << (target + 1)) | (uj & (tbit - 1));
    if (!control.matches(base)) continue;
    const cplx* m = blk + 4 * gather_bits(base, selectors);
    const cplx v0 = a[base];
    const cplx v1 = a[base | tbit];
    a[base] = m[0] * v0 + m[1] * v1;
    a[base | tbit] = m[2] * v0 + m[3] * v1;
  }
}

void phase_flip(std::span<cplx> amps, BitPattern pattern, BitPattern control) {
  const auto n = static_cast<std::int64_t>(amps.size());
  cplx* a = amps.data();
#pragma omp parallel for if (parallel_worthwhile(amps.size())) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto ui = static_cast<std::uint64_t>(i);
    if (control.matches(ui) && pattern.matches(ui)) a[i] = -a[i];
  }
}

void scale(std::span<cplx> amps, cplx factor, BitPattern control) {
  const auto n = static_cast<std::int64_t>(amps.size());
  cplx* a = amps.data();
#pragma omp parallel for if (parallel_worthwhile(amps.size())) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    if (control.matches(static_cast<std::uint64_t>(i))) a[i] *= factor;
  }
}

double pattern_weight(std::span<const cplx> amps, BitPattern pattern) {
  const auto n_blocks = static_cast<std::int64_t>(
      (amps.size() + kReductionBlock - 1) / kReductionBlock);
  std::vector<double> partial(static_cast<std::size_t>(n_blocks), 0.0);
  const cplx* a = amps.data();
  const std::size_t size = amps.size();
#pragma omp parallel for if (parallel_worthwhile(size)) schedule(static)
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    double acc = 0.0;
    const std::size_t begin = static_cast<std::size_t>(b) * kReductionBlock;
    const std::size_t end = std::min(size, begin + kReductionBlock);
    for (std::size_t i = begin; i < end; ++i) {
      if (pattern.matches(i)) acc += std::norm(a[i]);
    }
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace omp
}  // namespace qamc::kernels
