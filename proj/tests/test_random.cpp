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

#include <set>
#include <stdexcept>

#include "gtest/gtest.h"

using namespace entcap;

TEST(Rng, same_seed_same_stream) {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) {
        ASSERT_EQ(a.below(1000), b.below(1000));
        ASSERT_EQ(a.unit(), b.unit());
    }
}

TEST(Rng, below_and_unit_ranges) {
    Rng rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = rng.below(5);
        ASSERT_LT(v, 5u);
        seen.insert(v);
        const double u = rng.unit();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    EXPECT_EQ(seen.size(), 5u);
    EXPECT_THROW(rng.below(0), std::invalid_argument);
}

TEST(Rng, derived_seeds_are_distinct) {
    std::set<std::uint64_t> seeds;
    for (std::uint64_t i = 0; i < 10000; ++i) seeds.insert(derive_seed(1, i));
    EXPECT_EQ(seeds.size(), 10000u);
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}
