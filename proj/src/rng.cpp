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

#include "qamc/rng.hpp"

#include <cmath>
#include <numbers>

namespace qamc {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(Philox4x32::Counter& c, const Philox4x32::Key& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

inline Philox4x32::Key split_key(std::uint64_t seed) {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits =
      ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) {
  round_once(ctr, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kWeyl0;
    key[1] += kWeyl1;
    round_once(ctr, key);
  }
  return ctr;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b) {
  const auto out = Philox4x32::block(
      {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
       static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)},
      split_key(master));
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

PhiloxEngine::PhiloxEngine(std::uint64_t seed, std::uint64_t stream)
    : key_(split_key(seed)), stream_(stream) {}

PhiloxEngine::result_type PhiloxEngine::operator()() {
  if (used_ == 4) {
    buffer_ = Philox4x32::block(
        {static_cast<std::uint32_t>(block_index_),
         static_cast<std::uint32_t>(block_index_ >> 32),
         static_cast<std::uint32_t>(stream_),
         static_cast<std::uint32_t>(stream_ >> 32)},
        key_);
    ++block_index_;
    used_ = 0;
  }
  return buffer_[used_++];
}

double PhiloxEngine::uniform() {
  const auto hi = (*this)();
  const auto lo = (*this)();
  return to_unit(hi, lo);
}

double normal_at(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
  const auto out = Philox4x32::block(
      {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32),
       static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j >> 32)},
      split_key(seed));
  // u1 in (0, 1] keeps the logarithm finite.
  const double u1 = 1.0 - to_unit(out[0], out[1]);
  const double u2 = to_unit(out[2], out[3]);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace qamc
