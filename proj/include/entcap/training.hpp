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
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "entcap/dataset.hpp"
#include "entcap/model.hpp"

namespace entcap {

struct TrainingSet {
    std::vector<Eigen::MatrixXd> sequences;  ///< T x D each
    std::vector<double> targets;

    std::size_t size() const { return targets.size(); }
};

/// Encodes labeled records; throws on unlabeled records or register mismatch.
TrainingSet make_training_set(std::span<const Record> records, const EncodingConfig& encoding);

struct TrainConfig {
    std::size_t epochs = 200;
    std::size_t batch_size = 1000;
    double huber_delta = 1.0;
    double lr = 1e-3;
    int hidden_dim = 64;
    int fc_dim = 64;
    Pooling pooling = Pooling::Concat;
    std::uint64_t seed = 0;
};

struct EpochResult {
    double mean_loss = 0.0;         ///< per-example Huber loss averaged over the epoch
    std::size_t steps = 0;          ///< optimizer steps taken
    std::vector<double> predictions;  ///< pre-update prediction per example, dataset order
};

/// One pass in a seeded shuffled order: consecutive chunks of batch_size
/// examples (the last may be short), mean Huber loss per chunk, one Adam step
/// per chunk.
EpochResult train_epoch(LstmRegressor& model, AdamState& adam, const TrainingSet& data,
                        const TrainConfig& config, RandomSource& rng);

struct Evaluation {
    double mean_loss = 0.0;
    Predictions predictions;
};

Evaluation evaluate(const LstmRegressor& model, const TrainingSet& data, double huber_delta);

struct EpochStats {
    std::size_t epoch = 0;  ///< 1-based
    double train_loss = 0.0;
    double test_loss = 0.0;
    double train_pc = 0.0;  ///< NaN when undefined
    double test_pc = 0.0;
};

struct FitResult {
    LstmRegressor best;
    std::size_t best_epoch = 0;
    double best_loss = 0.0;
    std::vector<EpochStats> history;
};

/// Full training run. The returned model is the snapshot with the lowest
/// loss on `validation` over all epochs. Throws if batch_size exceeds the
/// training-set size.
FitResult fit(const TrainingSet& train, const TrainingSet& validation, const ModelShape& shape,
              const TrainConfig& config,
              const std::function<void(const EpochStats&)>& on_epoch = {});

}  // namespace entcap
