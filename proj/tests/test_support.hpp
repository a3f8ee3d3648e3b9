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

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "entcap/random.hpp"
#include "entcap/simulator.hpp"

namespace entcap::testing {

/// Replays scripted integer draws, then falls back to a seeded Rng.
class ScriptedSource final : public RandomSource {
   public:
    explicit ScriptedSource(std::deque<std::uint64_t> ints, std::uint64_t fallback_seed = 0)
        : ints_(std::move(ints)), fallback_(fallback_seed) {}

    std::uint64_t below(std::uint64_t bound) override {
        if (ints_.empty()) return fallback_.below(bound);
        const std::uint64_t v = ints_.front();
        ints_.pop_front();
        if (v >= bound) throw std::logic_error("scripted draw out of range");
        return v;
    }
    double unit() override { return fallback_.unit(); }

   private:
    std::deque<std::uint64_t> ints_;
    Rng fallback_;
};

/// Haar-like random state from normalized complex Gaussian amplitudes.
inline StateVector random_state(int n_qubits, std::mt19937_64& gen) {
    std::normal_distribution<double> normal;
    std::vector<Amplitude> amps(std::size_t{1} << n_qubits);
    for (Amplitude& a : amps) a = {normal(gen), normal(gen)};
    return StateVector::from_amplitudes(std::move(amps)).normalized();
}

inline StateVector random_qubit(std::mt19937_64& gen) { return random_state(1, gen); }

/// Fresh, empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("entcap_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace entcap::testing
