// Copyright 2026 The entcap Authors
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
#include <random>

namespace entcap {

/// Source of randomness consumed by every stochastic routine in the library.
///
/// Only two primitives are exposed so that the mapping from raw bits to
/// values is fixed by this library rather than by the standard library
/// implementation (std::uniform_*_distribution is implementation-defined).
class RandomSource {
   public:
    virtual ~RandomSource() = default;

    /// Uniform integer in [0, bound). bound must be positive.
    virtual std::uint64_t below(std::uint64_t bound) = 0;

    /// Uniform double in [0, 1) with 53 random bits.
    virtual double unit() = 0;
};

/// The library's reproducible generator: std::mt19937_64 seeded with a single
/// 64-bit value. Integers are drawn by rejection sampling on the raw 64-bit
/// output, reals as (raw >> 11) * 2^-53.
class Rng final : public RandomSource {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t below(std::uint64_t bound) override;
    double unit() override;

    std::uint64_t next_u64() { return engine_(); }

   private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent child seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Deterministic child seed for stream `index` under `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace entcap
