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

#include "entcap/random.hpp"

#include <limits>
#include <stdexcept>

namespace entcap {

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw std::invalid_argument("Rng::below: bound must be positive");
    }
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % bound;
}

double Rng::unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix_seed(mix_seed(base) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

}  // namespace entcap
