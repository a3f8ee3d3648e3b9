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

#include "gtest/gtest.h"

using namespace entcap;

namespace {

ModelShape small_shape() {
    ModelShape s;
    s.input_dim = 9;
    s.hidden_dim = 6;
    s.fc_dim = 5;
    s.seq_len = 8;
    return s;
}

TrainingSet random_set(std::size_t n, std::uint64_t seed, double constant = -1.0) {
    Rng rng(seed);
    EncodingConfig enc{3, 8};
    TrainingSet data;
    for (std::size_t k = 0; k < n; ++k) {
        const Circuit c = generate_gate_strategy(3, 8, rng);
        data.sequences.push_back(circuit_features(c, enc));
        data.targets.push_back(constant >= 0 ? constant : rng.unit());
    }
    return data;
}

TrainConfig small_config() {
    TrainConfig c;
    c.batch_size = 8;
    c.lr = 1e-2;
    c.hidden_dim = 6;
    c.fc_dim = 5;
    return c;
}

}  // namespace

TEST(TrainEpoch, constant_target_loss_decreases) {
    const TrainingSet data = random_set(32, 1, 0.7);
    Rng rng(2);
    LstmRegressor m = init_model(small_shape(), rng);
    AdamState adam = AdamState::for_model(m, {1e-3});
    TrainConfig config = small_config();
    config.batch_size = data.size();
    double previous = 1e300;
    for (int epoch = 0; epoch < 10; ++epoch) {
        const EpochResult r = train_epoch(m, adam, data, config, rng);
        EXPECT_LT(r.mean_loss, previous) << "epoch " << epoch;
        previous = r.mean_loss;
    }
}

TEST(TrainEpoch, step_count_follows_batch_size) {
    const TrainingSet data = random_set(20, 3);
    Rng rng(4);
    LstmRegressor m = init_model(small_shape(), rng);
    AdamState adam = AdamState::for_model(m);
    TrainConfig config = small_config();
    config.batch_size = 20;
    EXPECT_EQ(train_epoch(m, adam, data, config, rng).steps, 1u);
    EXPECT_EQ(adam.step, 1u);
    config.batch_size = 8;
    const EpochResult r = train_epoch(m, adam, data, config, rng);
    EXPECT_EQ(r.steps, 3u);
    EXPECT_EQ(r.predictions.size(), 20u);
    EXPECT_EQ(adam.step, 4u);
}

TEST(TrainEpoch, errors) {
    Rng rng(5);
    LstmRegressor m = init_model(small_shape(), rng);
    AdamState adam = AdamState::for_model(m);
    TrainConfig config = small_config();
    EXPECT_THROW(train_epoch(m, adam, TrainingSet{}, config, rng), std::invalid_argument);
    config.batch_size = 0;
    EXPECT_THROW(train_epoch(m, adam, random_set(4, 6), config, rng), std::invalid_argument);
}

TEST(Fit, bit_identical_trajectories) {
    const TrainingSet train = random_set(40, 7);
    const TrainingSet test = random_set(10, 8);
    TrainConfig config = small_config();
    config.epochs = 4;
    config.seed = 9;
    const FitResult a = fit(train, test, small_shape(), config);
    const FitResult b = fit(train, test, small_shape(), config);
    ASSERT_EQ(a.history.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(a.history[k].train_loss, b.history[k].train_loss);
        EXPECT_EQ(a.history[k].test_loss, b.history[k].test_loss);
        EXPECT_EQ(a.history[k].epoch, k + 1);
    }
    EXPECT_TRUE(a.best.params == b.best.params);
    config.seed = 10;
    EXPECT_NE(fit(train, test, small_shape(), config).history[0].train_loss, a.history[0].train_loss);
}

TEST(Fit, keeps_lowest_test_loss_checkpoint) {
    const TrainingSet train = random_set(40, 11);
    const TrainingSet test = random_set(10, 12);
    TrainConfig config = small_config();
    config.epochs = 6;
    const FitResult r = fit(train, test, small_shape(), config);
    double best = 1e300;
    std::size_t best_epoch = 0;
    for (const EpochStats& s : r.history) {
        if (s.test_loss < best) best = s.test_loss, best_epoch = s.epoch;
    }
    EXPECT_EQ(r.best_epoch, best_epoch);
    EXPECT_EQ(r.best_loss, best);
    EXPECT_EQ(evaluate(r.best, test, config.huber_delta).mean_loss, best);
}

TEST(Fit, batch_larger_than_training_set) {
    const TrainingSet train = random_set(5, 13);
    TrainConfig config = small_config();
    config.epochs = 1;
    config.batch_size = 6;
    EXPECT_THROW(fit(train, train, small_shape(), config), std::invalid_argument);
}

TEST(MakeTrainingSet, requires_labels) {
    Rng rng(14);
    std::vector<Record> records{{"a", generate_gate_strategy(3, 4, rng), Label{0.5, 10, 1, 0.0}},
                                {"b", generate_gate_strategy(3, 4, rng), std::nullopt}};
    const EncodingConfig enc{3, 8};
    EXPECT_THROW(make_training_set(records, enc), std::invalid_argument);
    records.pop_back();
    const TrainingSet set = make_training_set(records, enc);
    ASSERT_EQ(set.size(), 1u);
    EXPECT_EQ(set.targets[0], 0.5);
    EXPECT_EQ(set.sequences[0].rows(), 8);
}
