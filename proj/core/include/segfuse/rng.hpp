// Copyright 2026 The Segfuse Authors.
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

namespace segfuse {

// Deterministic 64-bit generator used everywhere randomness is needed.
//
// The engine is SplitMix64 (Steele, Lea & Flood 2014): the state is a plain
// counter advanced by the golden-ratio increment and the output is a fixed
// 64-bit finalizer of that counter. All derived distributions below are
// implemented from integer bit operations plus IEEE-754 basic arithmetic,
// so identical seeds produce identical streams on every platform. The
// standard-library engines are avoided on purpose: their distribution
// adapters are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  /// Uniform double in [0, 1), 53 random bits.
  double uniform();

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi);

  /// Uniform integer in [0, n), n > 0. Rejection-sampled, bias free.
  std::uint64_t uniform_below(std::uint64_t n);

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi);

  bool bernoulli(double p);

  /// Gaussian via the 12-sum Irwin-Hall approximation. Exact tails are not
  /// needed by any consumer; portability of the stream is.
  double normal(double mean, double sigma);

  /// Poisson by Knuth's product-of-uniforms method; lambda must be small
  /// (spurious-segment counts are).
  int poisson(double lambda);

  /// Derives an independent stream seed from a base seed and an index
  /// (scene number, channel number). Pure function of its inputs.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t index);

 private:
  std::uint64_t state_;
};

}  // namespace segfuse
