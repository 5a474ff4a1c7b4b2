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

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace qamc {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// Every output block is a pure function of (key, counter), so streams can be
/// split by assigning disjoint counters and any worker can regenerate any
/// draw without touching shared state.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Derive a 64-bit seed from a master seed and up to two stream indices.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b = 0);

/// FNV-1a over a string; stable across platforms, used for cell ids.
std::uint64_t stable_hash(std::string_view text);

/// Sequential uniform random bit generator over a Philox stream.
///
/// Satisfies std::uniform_random_bit_generator so it can drive <random>
/// distributions. The stream is identified by its seed; the internal counter
/// is the only state.
class PhiloxEngine {
 public:
  using result_type = std::uint32_t;

  explicit PhiloxEngine(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_index_ = 0;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
};

/// Standard normal draw addressed by (seed, i, j); Box-Muller on one block.
double normal_at(std::uint64_t seed, std::uint64_t i, std::uint64_t j);

}  // namespace qamc
