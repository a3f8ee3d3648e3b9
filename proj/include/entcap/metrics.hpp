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

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entcap/random.hpp"

namespace entcap {

/// Raised when a correlation has no defined value (both inputs constant).
class UndefinedCorrelation : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// Sample Pearson correlation. Exactly one constant input gives 0 (zero
/// covariance); both constant throws UndefinedCorrelation.
double pearson(std::span<const double> x, std::span<const double> y);

double rmse(std::span<const double> x, std::span<const double> y);

double median(std::vector<double> values);

struct SubsampleDistribution {
    std::vector<double> values;  ///< one Pc per repetition
    std::size_t redraws = 0;     ///< degenerate (constant) groups that were resampled
    /// Histogram over [-1, 1] with bin width 0.01; counts[k] covers
    /// [-1 + 0.01 k, -1 + 0.01 (k+1)), the last bin also includes 1.
    std::vector<std::size_t> histogram;
};

inline constexpr double kHistogramBinWidth = 0.01;
inline constexpr std::size_t kHistogramBins = 200;

std::vector<std::size_t> histogram_counts(std::span<const double> values);

/// Repeatedly draws `group_size` indices without replacement and correlates
/// the two subvectors. A draw where either subvector is constant is redrawn
/// (and counted); after 1000 consecutive degenerate draws it gives up.
SubsampleDistribution subsample_pc_distribution(std::span<const double> truth,
                                                std::span<const double> predicted,
                                                std::size_t group_size, std::size_t repetitions,
                                                RandomSource& rng);

}  // namespace entcap
