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

#include "entcap/training.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "entcap/metrics.hpp"

namespace entcap {

TrainingSet make_training_set(std::span<const Record> records, const EncodingConfig& encoding) {
    TrainingSet set;
    set.sequences.reserve(records.size());
    set.targets = labels_of(records);
    for (const Record& r : records) {
        try {
            set.sequences.push_back(circuit_features(r.circuit, encoding));
        } catch (const std::exception& e) {
            throw std::invalid_argument("record " + r.id + ": " + e.what());
        }
    }
    return set;
}

EpochResult train_epoch(LstmRegressor& model, AdamState& adam, const TrainingSet& data,
                        const TrainConfig& config, RandomSource& rng) {
    const std::size_t n = data.size();
    if (n == 0) {
        throw std::invalid_argument("train_epoch: empty training set");
    }
    if (config.batch_size < 1) {
        throw std::invalid_argument("train_epoch: batch_size must be positive");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    EpochResult result;
    result.predictions.assign(n, 0.0);
    double loss_sum = 0.0;
    ForwardCache cache;
    for (std::size_t begin = 0; begin < n; begin += config.batch_size) {
        const std::size_t end = std::min(n, begin + config.batch_size);
        const std::span<const std::size_t> idx(order.data() + begin, end - begin);
        const SequenceBatch batch = make_batch(data.sequences, idx);
        const Eigen::RowVectorXd pred = forward_batch(model, batch, &cache);

        const double scale = 1.0 / static_cast<double>(idx.size());
        Eigen::RowVectorXd dloss(pred.cols());
        for (Eigen::Index b = 0; b < pred.cols(); ++b) {
            const std::size_t i = idx[static_cast<std::size_t>(b)];
            const HuberResult h = huber_loss(pred(b), data.targets[i], config.huber_delta);
            loss_sum += h.loss;
            dloss(b) = h.grad * scale;
            result.predictions[i] = pred(b);
        }
        adam_step(model, backward_batch(model, cache, dloss), adam);
        ++result.steps;
    }
    result.mean_loss = loss_sum / static_cast<double>(n);
    return result;
}

Evaluation evaluate(const LstmRegressor& model, const TrainingSet& data, double huber_delta) {
    Evaluation ev;
    ev.predictions = predict_batch(model, data.sequences);
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        total += huber_loss(ev.predictions.raw[i], data.targets[i], huber_delta).loss;
    }
    ev.mean_loss = data.size() ? total / static_cast<double>(data.size()) : 0.0;
    return ev;
}

namespace {

double pearson_or_nan(std::span<const double> x, std::span<const double> y) {
    try {
        return pearson(x, y);
    } catch (const std::exception&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

}  // namespace

FitResult fit(const TrainingSet& train, const TrainingSet& validation, const ModelShape& shape,
              const TrainConfig& config, const std::function<void(const EpochStats&)>& on_epoch) {
    if (config.epochs < 1) {
        throw std::invalid_argument("fit: epochs must be positive");
    }
    if (config.batch_size < 1 || config.batch_size > train.size()) {
        throw std::invalid_argument("fit: batch size " + std::to_string(config.batch_size) +
                                    " must lie in [1, " + std::to_string(train.size()) + "]");
    }
    if (validation.size() == 0) {
        throw std::invalid_argument("fit: empty validation set");
    }
    Rng init_rng(derive_seed(config.seed, 0));
    Rng shuffle_rng(derive_seed(config.seed, 1));
    LstmRegressor model = init_model(shape, init_rng);
    AdamConfig adam_config;
    adam_config.lr = config.lr;
    AdamState adam = AdamState::for_model(model, adam_config);

    FitResult result;
    result.best_loss = std::numeric_limits<double>::infinity();
    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        const EpochResult er = train_epoch(model, adam, train, config, shuffle_rng);
        const Evaluation ev = evaluate(model, validation, config.huber_delta);
        EpochStats stats;
        stats.epoch = epoch;
        stats.train_loss = er.mean_loss;
        stats.test_loss = ev.mean_loss;
        stats.train_pc = pearson_or_nan(train.targets, er.predictions);
        stats.test_pc = pearson_or_nan(validation.targets, ev.predictions.raw);
        result.history.push_back(stats);
        if (ev.mean_loss < result.best_loss) {
            result.best_loss = ev.mean_loss;
            result.best_epoch = epoch;
            result.best = model;
        }
        if (on_epoch) on_epoch(stats);
    }
    return result;
}

}  // namespace entcap
