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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "entcap/encoding.hpp"
#include "entcap/random.hpp"

namespace entcap {

/// How the per-step hidden states are combined before the fully connected
/// layer. Concat stacks all T hidden vectors (T * hidden inputs to fc).
enum class Pooling { Concat, Mean, Last };

std::string_view to_string(Pooling pooling);
Pooling parse_pooling(std::string_view name);

struct ModelShape {
    int input_dim = 36;
    int hidden_dim = 64;
    int fc_dim = 64;
    int seq_len = 30;
    Pooling pooling = Pooling::Concat;

    int pooled_dim() const { return pooling == Pooling::Concat ? seq_len * hidden_dim : hidden_dim; }
    bool operator==(const ModelShape&) const = default;
};

/// All trainable tensors. Gradients and Adam moments reuse this layout.
///
/// LSTM gate blocks are stacked in the order [input, forget, cell, output]:
/// rows [0,H) of w_ih / w_hh / b_lstm belong to the input gate, [H,2H) to the
/// forget gate, and so on.
struct Parameters {
    Eigen::MatrixXd w_ih;    ///< 4H x D
    Eigen::MatrixXd w_hh;    ///< 4H x H
    Eigen::MatrixXd b_lstm;  ///< 4H x 1
    Eigen::MatrixXd w_fc;    ///< F x P
    Eigen::MatrixXd b_fc;    ///< F x 1
    Eigen::MatrixXd w_out;   ///< 1 x F
    Eigen::MatrixXd b_out;   ///< 1 x 1

    static constexpr std::size_t kTensorCount = 7;
    static const std::array<std::string_view, kTensorCount>& names();

    std::array<Eigen::MatrixXd*, kTensorCount> tensors();
    std::array<const Eigen::MatrixXd*, kTensorCount> tensors() const;

    static Parameters zeros(const ModelShape& shape);
    std::size_t size() const;
    bool same_shape(const Parameters& other) const;
    bool operator==(const Parameters& other) const;
};

struct LstmRegressor {
    ModelShape shape;
    Parameters params;
    /// Bumped by every optimizer step; caches remember the revision they
    /// were computed at.
    std::uint64_t revision = 0;
};

/// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) per tensor with fan_in = D for
/// w_ih, H for w_hh and b_lstm, P for the fc tensors and F for the head.
/// The forget-gate slice of b_lstm is then set to 1.
LstmRegressor init_model(const ModelShape& shape, RandomSource& rng);

/// Batch of sequences laid out per time step: steps[t] is D x B.
struct SequenceBatch {
    std::vector<Eigen::MatrixXd> steps;
    Eigen::Index size() const { return steps.empty() ? 0 : steps.front().cols(); }
};

/// Stacks row t of every T x D sequence into steps[t].
SequenceBatch make_batch(std::span<const Eigen::MatrixXd> sequences,
                         std::span<const std::size_t> indices = {});

/// Activations kept by the forward pass for backpropagation.
struct ForwardCache {
    ModelShape shape;
    std::uint64_t revision = 0;
    SequenceBatch input;
    std::vector<Eigen::MatrixXd> gate_i, gate_f, gate_g, gate_o;  ///< H x B per step
    std::vector<Eigen::MatrixXd> cell;                            ///< c_t
    std::vector<Eigen::MatrixXd> cell_tanh;                       ///< tanh(c_t)
    std::vector<Eigen::MatrixXd> hidden;                          ///< h_t
    Eigen::MatrixXd pooled;                                       ///< P x B
    Eigen::MatrixXd fc_out;                                       ///< F x B, after tanh
};

/// Batched forward pass. Returns one prediction per batch column.
Eigen::RowVectorXd forward_batch(const LstmRegressor& model, const SequenceBatch& batch,
                                 ForwardCache* cache = nullptr);

/// Gradients of sum_b dloss[b] * prediction[b] w.r.t. every parameter.
Parameters backward_batch(const LstmRegressor& model, const ForwardCache& cache,
                          const Eigen::RowVectorXd& dloss_dprediction);

/// Single-sequence forms. `features` is T x D.
std::pair<double, ForwardCache> forward(const LstmRegressor& model,
                                        const Eigen::MatrixXd& features);
Parameters backward(const LstmRegressor& model, const ForwardCache& cache,
                    double dloss_dprediction);

struct HuberResult {
    double loss = 0.0;
    double grad = 0.0;  ///< d loss / d prediction
};

HuberResult huber_loss(double prediction, double target, double delta);

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AdamState {
    AdamConfig config;
    Parameters first_moment;
    Parameters second_moment;
    std::uint64_t step = 0;

    static AdamState for_model(const LstmRegressor& model, const AdamConfig& config = {});
};

/// Bias-corrected Adam update of every tensor.
void adam_step(LstmRegressor& model, const Parameters& gradients, AdamState& adam);

struct Predictions {
    std::vector<double> raw;
    std::vector<double> clamped;  ///< raw clipped to [0, 1]
};

/// Read-only forward over many sequences (processed in fixed-size chunks).
Predictions predict_batch(const LstmRegressor& model, std::span<const Eigen::MatrixXd> sequences);

/// A model together with the encoding it was trained under.
struct Checkpoint {
    LstmRegressor model;
    EncodingConfig encoding;
};

inline constexpr int kCheckpointVersion = 1;

/// Self-describing JSON text: format tag and version, hyperparameters,
/// conventions, and every tensor (row-major, shortest round-trip decimals).
std::string checkpoint_to_string(const Checkpoint& checkpoint);
Checkpoint checkpoint_from_string(std::string_view text);
void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace entcap
