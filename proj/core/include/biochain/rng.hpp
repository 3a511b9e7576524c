// Copyright 2026 The Biochain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace biochain {

// Seeded pseudo-random source. Every randomized operation in the library
// takes one of these explicitly; nothing reads ambient entropy.
//
// Only the raw 64-bit engine output is used (no std:: distributions), so a
// given seed yields the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, bound). bound must be non-zero.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi);

  // Uniform double in [0, 1) with 53 bits of precision.
  double unit();

  bool coin() { return (next_u64() >> 63) != 0; }

  // Independent child stream, derived deterministically from this one.
  Rng fork(std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace biochain
