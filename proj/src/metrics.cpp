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

#include "entcap/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace entcap {

namespace {

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("pearson: length mismatch (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("pearson: need at least 2 points");
    }
    const bool cx = is_constant(x);
    const bool cy = is_constant(y);
    if (cx && cy) {
        throw UndefinedCorrelation("pearson: both inputs are constant");
    }
    if (cx || cy) return 0.0;

    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double rmse(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("rmse: length mismatch (" + std::to_string(x.size()) + " vs " +
                                    std::to_string(y.size()) + ")");
    }
    if (x.empty()) {
        throw std::invalid_argument("rmse: empty input");
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) ss += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(ss / static_cast<double>(x.size()));
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median: empty input");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<std::size_t> histogram_counts(std::span<const double> values) {
    std::vector<std::size_t> counts(kHistogramBins, 0);
    for (double v : values) {
        auto bin = static_cast<long>(std::floor((v + 1.0) / kHistogramBinWidth));
        bin = std::clamp(bin, 0L, static_cast<long>(kHistogramBins) - 1);
        ++counts[static_cast<std::size_t>(bin)];
    }
    return counts;
}

SubsampleDistribution subsample_pc_distribution(std::span<const double> truth,
                                                std::span<const double> predicted,
                                                std::size_t group_size, std::size_t repetitions,
                                                RandomSource& rng) {
    constexpr std::size_t kMaxConsecutiveRedraws = 1000;
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("subsample_pc_distribution: length mismatch");
    }
    if (group_size < 2) {
        throw std::invalid_argument("subsample_pc_distribution: group_size must be >= 2");
    }
    if (group_size > truth.size()) {
        throw std::invalid_argument("subsample_pc_distribution: group_size " +
                                    std::to_string(group_size) + " exceeds data size " +
                                    std::to_string(truth.size()));
    }
    SubsampleDistribution out;
    out.values.reserve(repetitions);
    std::vector<std::size_t> order(truth.size());
    std::vector<double> xs(group_size);
    std::vector<double> ys(group_size);
    std::size_t consecutive = 0;
    while (out.values.size() < repetitions) {
        // Partial Fisher-Yates: the first group_size slots are the sample.
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t k = 0; k < group_size; ++k) {
            const std::size_t j = k + rng.below(order.size() - k);
            std::swap(order[k], order[j]);
            xs[k] = truth[order[k]];
            ys[k] = predicted[order[k]];
        }
        if (is_constant(xs) || is_constant(ys)) {
            ++out.redraws;
            if (++consecutive >= kMaxConsecutiveRedraws) {
                throw UndefinedCorrelation(
                    "subsample_pc_distribution: could not draw a non-constant group");
            }
            continue;
        }
        consecutive = 0;
        out.values.push_back(pearson(xs, ys));
    }
    out.histogram = histogram_counts(out.values);
    return out;
}

}  // namespace entcap
