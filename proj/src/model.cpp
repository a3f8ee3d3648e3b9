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

#include "entcap/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace entcap {

using Eigen::Index;
using Eigen::MatrixXd;

std::string_view to_string(Pooling pooling) {
    switch (pooling) {
        case Pooling::Concat:
            return "concat";
        case Pooling::Mean:
            return "mean";
        case Pooling::Last:
            return "last";
    }
    return "?";
}

Pooling parse_pooling(std::string_view name) {
    if (name == "concat") return Pooling::Concat;
    if (name == "mean") return Pooling::Mean;
    if (name == "last") return Pooling::Last;
    throw std::invalid_argument("unknown pooling '" + std::string(name) + "'");
}

const std::array<std::string_view, Parameters::kTensorCount>& Parameters::names() {
    static const std::array<std::string_view, kTensorCount> kNames = {
        "w_ih", "w_hh", "b_lstm", "w_fc", "b_fc", "w_out", "b_out"};
    return kNames;
}

std::array<MatrixXd*, Parameters::kTensorCount> Parameters::tensors() {
    return {&w_ih, &w_hh, &b_lstm, &w_fc, &b_fc, &w_out, &b_out};
}

std::array<const MatrixXd*, Parameters::kTensorCount> Parameters::tensors() const {
    return {&w_ih, &w_hh, &b_lstm, &w_fc, &b_fc, &w_out, &b_out};
}

Parameters Parameters::zeros(const ModelShape& s) {
    const Index h4 = 4 * s.hidden_dim;
    Parameters p;
    p.w_ih = MatrixXd::Zero(h4, s.input_dim);
    p.w_hh = MatrixXd::Zero(h4, s.hidden_dim);
    p.b_lstm = MatrixXd::Zero(h4, 1);
    p.w_fc = MatrixXd::Zero(s.fc_dim, s.pooled_dim());
    p.b_fc = MatrixXd::Zero(s.fc_dim, 1);
    p.w_out = MatrixXd::Zero(1, s.fc_dim);
    p.b_out = MatrixXd::Zero(1, 1);
    return p;
}

std::size_t Parameters::size() const {
    std::size_t total = 0;
    for (const MatrixXd* t : tensors()) total += static_cast<std::size_t>(t->size());
    return total;
}

bool Parameters::same_shape(const Parameters& other) const {
    const auto a = tensors();
    const auto b = other.tensors();
    for (std::size_t k = 0; k < kTensorCount; ++k) {
        if (a[k]->rows() != b[k]->rows() || a[k]->cols() != b[k]->cols()) return false;
    }
    return true;
}

bool Parameters::operator==(const Parameters& other) const {
    if (!same_shape(other)) return false;
    const auto a = tensors();
    const auto b = other.tensors();
    for (std::size_t k = 0; k < kTensorCount; ++k) {
        if (*a[k] != *b[k]) return false;
    }
    return true;
}

namespace {

void check_shape(const ModelShape& s) {
    if (s.input_dim < 1 || s.hidden_dim < 1 || s.fc_dim < 1 || s.seq_len < 1) {
        throw std::invalid_argument("model dimensions must be positive (input " +
                                    std::to_string(s.input_dim) + ", hidden " +
                                    std::to_string(s.hidden_dim) + ", fc " +
                                    std::to_string(s.fc_dim) + ", seq_len " +
                                    std::to_string(s.seq_len) + ")");
    }
}

void fill_uniform(MatrixXd& m, double fan_in, RandomSource& rng) {
    const double bound = 1.0 / std::sqrt(fan_in);
    // Row-major fill order so the draw sequence does not depend on storage.
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) m(r, c) = (2.0 * rng.unit() - 1.0) * bound;
    }
}

MatrixXd logistic(const MatrixXd& z) {
    return (1.0 + (-z.array()).exp()).inverse().matrix();
}

}  // namespace

LstmRegressor init_model(const ModelShape& shape, RandomSource& rng) {
    check_shape(shape);
    LstmRegressor model{shape, Parameters::zeros(shape), 0};
    Parameters& p = model.params;
    const int h = shape.hidden_dim;
    fill_uniform(p.w_ih, shape.input_dim, rng);
    fill_uniform(p.w_hh, h, rng);
    fill_uniform(p.b_lstm, h, rng);
    fill_uniform(p.w_fc, shape.pooled_dim(), rng);
    fill_uniform(p.b_fc, shape.pooled_dim(), rng);
    fill_uniform(p.w_out, shape.fc_dim, rng);
    fill_uniform(p.b_out, shape.fc_dim, rng);
    p.b_lstm.middleRows(h, h).setOnes();
    return model;
}

SequenceBatch make_batch(std::span<const MatrixXd> sequences, std::span<const std::size_t> indices) {
    std::vector<std::size_t> all;
    if (indices.empty()) {
        all.resize(sequences.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        indices = all;
    }
    SequenceBatch batch;
    if (indices.empty()) return batch;
    const Index steps = sequences[indices[0]].rows();
    const Index dim = sequences[indices[0]].cols();
    const Index count = static_cast<Index>(indices.size());
    batch.steps.assign(static_cast<std::size_t>(steps), MatrixXd(dim, count));
    for (Index b = 0; b < count; ++b) {
        const MatrixXd& seq = sequences[indices[static_cast<std::size_t>(b)]];
        if (seq.rows() != steps || seq.cols() != dim) {
            throw std::invalid_argument("make_batch: sequences differ in shape");
        }
        for (Index t = 0; t < steps; ++t) {
            batch.steps[static_cast<std::size_t>(t)].col(b) = seq.row(t).transpose();
        }
    }
    return batch;
}

Eigen::RowVectorXd forward_batch(const LstmRegressor& model, const SequenceBatch& batch,
                                 ForwardCache* cache) {
    const ModelShape& s = model.shape;
    const Parameters& p = model.params;
    if (static_cast<int>(batch.steps.size()) != s.seq_len) {
        throw std::invalid_argument("forward: expected " + std::to_string(s.seq_len) +
                                    " time steps, got " + std::to_string(batch.steps.size()));
    }
    const Index count = batch.size();
    const Index h = s.hidden_dim;
    for (const MatrixXd& x : batch.steps) {
        if (x.rows() != s.input_dim || x.cols() != count) {
            throw std::invalid_argument("forward: expected input_dim " +
                                        std::to_string(s.input_dim) + ", got " +
                                        std::to_string(x.rows()));
        }
    }

    ForwardCache local;
    ForwardCache& c = cache ? *cache : local;
    c.shape = s;
    c.revision = model.revision;
    const auto T = static_cast<std::size_t>(s.seq_len);
    for (auto* v : {&c.gate_i, &c.gate_f, &c.gate_g, &c.gate_o, &c.cell, &c.cell_tanh, &c.hidden}) {
        v->resize(T);
    }

    MatrixXd h_prev = MatrixXd::Zero(h, count);
    MatrixXd c_prev = MatrixXd::Zero(h, count);
    MatrixXd z(4 * h, count);
    for (std::size_t t = 0; t < T; ++t) {
        z.noalias() = p.w_ih * batch.steps[t];
        z.noalias() += p.w_hh * h_prev;
        z.colwise() += p.b_lstm.col(0);
        c.gate_i[t] = logistic(z.topRows(h));
        c.gate_f[t] = logistic(z.middleRows(h, h));
        c.gate_g[t] = z.middleRows(2 * h, h).array().tanh().matrix();
        c.gate_o[t] = logistic(z.bottomRows(h));
        c.cell[t] = (c.gate_f[t].array() * c_prev.array() + c.gate_i[t].array() * c.gate_g[t].array())
                        .matrix();
        c.cell_tanh[t] = c.cell[t].array().tanh().matrix();
        c.hidden[t] = (c.gate_o[t].array() * c.cell_tanh[t].array()).matrix();
        h_prev = c.hidden[t];
        c_prev = c.cell[t];
    }

    switch (s.pooling) {
        case Pooling::Concat:
            c.pooled.resize(s.pooled_dim(), count);
            for (std::size_t t = 0; t < T; ++t) {
                c.pooled.middleRows(static_cast<Index>(t) * h, h) = c.hidden[t];
            }
            break;
        case Pooling::Mean:
            c.pooled = MatrixXd::Zero(h, count);
            for (std::size_t t = 0; t < T; ++t) c.pooled += c.hidden[t];
            c.pooled /= static_cast<double>(T);
            break;
        case Pooling::Last:
            c.pooled = c.hidden.back();
            break;
    }

    MatrixXd fc_pre = p.w_fc * c.pooled;
    fc_pre.colwise() += p.b_fc.col(0);
    c.fc_out = fc_pre.array().tanh().matrix();
    Eigen::RowVectorXd out = p.w_out * c.fc_out;
    out.array() += p.b_out(0, 0);
    if (cache) {
        c.input = batch;
    }
    return out;
}

Parameters backward_batch(const LstmRegressor& model, const ForwardCache& cache,
                          const Eigen::RowVectorXd& dloss) {
    const ModelShape& s = model.shape;
    const Parameters& p = model.params;
    if (!(cache.shape == s) || cache.revision != model.revision) {
        throw std::logic_error("backward: cache was produced by a different model state");
    }
    if (cache.input.steps.size() != static_cast<std::size_t>(s.seq_len) ||
        cache.fc_out.cols() != dloss.cols()) {
        throw std::invalid_argument("backward: cache and loss gradient sizes disagree");
    }
    const Index h = s.hidden_dim;
    const Index count = dloss.cols();
    const auto T = static_cast<std::size_t>(s.seq_len);
    Parameters g = Parameters::zeros(s);

    // Head: y = w_out a + b_out.
    g.w_out.noalias() = dloss * cache.fc_out.transpose();
    g.b_out(0, 0) = dloss.sum();
    // fc: a = tanh(w_fc pooled + b_fc).
    MatrixXd d_fc = p.w_out.transpose() * dloss;
    d_fc.array() *= 1.0 - cache.fc_out.array().square();
    g.w_fc.noalias() = d_fc * cache.pooled.transpose();
    g.b_fc = d_fc.rowwise().sum();
    const MatrixXd d_pooled = p.w_fc.transpose() * d_fc;

    MatrixXd dh_next = MatrixXd::Zero(h, count);
    MatrixXd dc_next = MatrixXd::Zero(h, count);
    MatrixXd dz(4 * h, count);
    const MatrixXd zeros = MatrixXd::Zero(h, count);
    for (std::size_t step = T; step-- > 0;) {
        MatrixXd dh = dh_next;
        switch (s.pooling) {
            case Pooling::Concat:
                dh += d_pooled.middleRows(static_cast<Index>(step) * h, h);
                break;
            case Pooling::Mean:
                dh += d_pooled / static_cast<double>(T);
                break;
            case Pooling::Last:
                if (step + 1 == T) dh += d_pooled;
                break;
        }
        const auto& gi = cache.gate_i[step].array();
        const auto& gf = cache.gate_f[step].array();
        const auto& gg = cache.gate_g[step].array();
        const auto& go = cache.gate_o[step].array();
        const auto& tc = cache.cell_tanh[step].array();
        const MatrixXd& c_prev = step > 0 ? cache.cell[step - 1] : zeros;
        const MatrixXd& h_prev = step > 0 ? cache.hidden[step - 1] : zeros;

        const Eigen::ArrayXXd dc = dh.array() * go * (1.0 - tc.square()) + dc_next.array();
        dz.topRows(h) = (dc * gg * gi * (1.0 - gi)).matrix();
        dz.middleRows(h, h) = (dc * c_prev.array() * gf * (1.0 - gf)).matrix();
        dz.middleRows(2 * h, h) = (dc * gi * (1.0 - gg.square())).matrix();
        dz.bottomRows(h) = (dh.array() * tc * go * (1.0 - go)).matrix();

        g.w_ih.noalias() += dz * cache.input.steps[step].transpose();
        g.w_hh.noalias() += dz * h_prev.transpose();
        g.b_lstm += dz.rowwise().sum();
        dh_next.noalias() = p.w_hh.transpose() * dz;
        dc_next = (dc * gf).matrix();
    }
    return g;
}

std::pair<double, ForwardCache> forward(const LstmRegressor& model, const MatrixXd& features) {
    if (features.rows() != model.shape.seq_len || features.cols() != model.shape.input_dim) {
        throw std::invalid_argument("forward: features must be " +
                                    std::to_string(model.shape.seq_len) + " x " +
                                    std::to_string(model.shape.input_dim));
    }
    ForwardCache cache;
    const Eigen::RowVectorXd y = forward_batch(model, make_batch({&features, 1}), &cache);
    return {y(0), std::move(cache)};
}

Parameters backward(const LstmRegressor& model, const ForwardCache& cache,
                    double dloss_dprediction) {
    Eigen::RowVectorXd d(1);
    d(0) = dloss_dprediction;
    return backward_batch(model, cache, d);
}

HuberResult huber_loss(double prediction, double target, double delta) {
    if (!(delta > 0.0)) {
        throw std::invalid_argument("huber_loss: delta must be positive");
    }
    const double r = prediction - target;
    if (std::abs(r) <= delta) {
        return {0.5 * r * r, r};
    }
    return {delta * (std::abs(r) - 0.5 * delta), r > 0 ? delta : -delta};
}

AdamState AdamState::for_model(const LstmRegressor& model, const AdamConfig& config) {
    AdamState s;
    s.config = config;
    s.first_moment = Parameters::zeros(model.shape);
    s.second_moment = Parameters::zeros(model.shape);
    return s;
}

void adam_step(LstmRegressor& model, const Parameters& gradients, AdamState& adam) {
    if (!model.params.same_shape(gradients) || !model.params.same_shape(adam.first_moment) ||
        !model.params.same_shape(adam.second_moment)) {
        throw std::invalid_argument("adam_step: tensor shapes disagree");
    }
    const AdamConfig& cfg = adam.config;
    ++adam.step;
    const double t = static_cast<double>(adam.step);
    const double correction1 = 1.0 - std::pow(cfg.beta1, t);
    const double correction2 = 1.0 - std::pow(cfg.beta2, t);

    auto params = model.params.tensors();
    auto grads = gradients.tensors();
    auto m = adam.first_moment.tensors();
    auto v = adam.second_moment.tensors();
    for (std::size_t k = 0; k < Parameters::kTensorCount; ++k) {
        m[k]->array() = cfg.beta1 * m[k]->array() + (1.0 - cfg.beta1) * grads[k]->array();
        v[k]->array() = cfg.beta2 * v[k]->array() + (1.0 - cfg.beta2) * grads[k]->array().square();
        params[k]->array() -= cfg.lr * (m[k]->array() / correction1) /
                              ((v[k]->array() / correction2).sqrt() + cfg.epsilon);
    }
    ++model.revision;
}

Predictions predict_batch(const LstmRegressor& model, std::span<const MatrixXd> sequences) {
    constexpr std::size_t kChunk = 512;
    Predictions out;
    out.raw.reserve(sequences.size());
    for (std::size_t begin = 0; begin < sequences.size(); begin += kChunk) {
        const std::size_t end = std::min(sequences.size(), begin + kChunk);
        for (const MatrixXd& seq : sequences.subspan(begin, end - begin)) {
            if (seq.rows() != model.shape.seq_len || seq.cols() != model.shape.input_dim) {
                throw std::invalid_argument("predict_batch: sequence shape does not match model");
            }
        }
        const Eigen::RowVectorXd y =
            forward_batch(model, make_batch(sequences.subspan(begin, end - begin)));
        for (Index b = 0; b < y.cols(); ++b) out.raw.push_back(y(b));
    }
    out.clamped.reserve(out.raw.size());
    for (double r : out.raw) out.clamped.push_back(std::clamp(r, 0.0, 1.0));
    return out;
}

namespace {

using nlohmann::json;

constexpr std::string_view kCheckpointFormat = "entcap-lstm-checkpoint";

json tensor_to_json(const MatrixXd& m) {
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(m.size()));
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

void tensor_from_json(const json& j, MatrixXd& m, std::string_view name) {
    const Index rows = j.at("rows").get<Index>();
    const Index cols = j.at("cols").get<Index>();
    if (rows != m.rows() || cols != m.cols()) {
        throw std::runtime_error("checkpoint: tensor " + std::string(name) + " is " +
                                 std::to_string(rows) + "x" + std::to_string(cols) +
                                 ", hyperparameters imply " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()));
    }
    const json& data = j.at("data");
    if (static_cast<Index>(data.size()) != rows * cols) {
        throw std::runtime_error("checkpoint: tensor " + std::string(name) +
                                 " has the wrong number of values");
    }
    std::size_t k = 0;
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) m(r, c) = data[k++].get<double>();
    }
}

}  // namespace

std::string checkpoint_to_string(const Checkpoint& ck) {
    const ModelShape& s = ck.model.shape;
    json tensors = json::object();
    const auto names = Parameters::names();
    const auto ts = ck.model.params.tensors();
    for (std::size_t k = 0; k < Parameters::kTensorCount; ++k) {
        tensors[std::string(names[k])] = tensor_to_json(*ts[k]);
    }
    json doc = {
        {"format", kCheckpointFormat},
        {"version", kCheckpointVersion},
        {"hyperparameters",
         {{"input_dim", s.input_dim},
          {"hidden_dim", s.hidden_dim},
          {"fc_dim", s.fc_dim},
          {"seq_len", s.seq_len},
          {"pooling", to_string(s.pooling)}}},
        {"encoding",
         {{"n_qubits", ck.encoding.n_qubits},
          {"seq_len", ck.encoding.seq_len},
          {"cnot_placement", to_string(ck.encoding.placement)},
          {"feature_scale", ck.encoding.scale}}},
        {"conventions",
         {{"lstm_gate_order", "input,forget,cell,output"},
          {"feature_flattening", "row-major"},
          {"tensor_layout", "row-major"},
          {"fc_activation", "tanh"},
          {"head", "linear"}}},
        {"tensors", std::move(tensors)},
    };
    return doc.dump(1) + "\n";
}

Checkpoint checkpoint_from_string(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("checkpoint: not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != kCheckpointFormat) {
        throw std::runtime_error("checkpoint: missing or wrong format tag");
    }
    const int version = doc.at("version").get<int>();
    if (version != kCheckpointVersion) {
        throw std::runtime_error("checkpoint: unsupported version " + std::to_string(version));
    }
    Checkpoint ck;
    const json& hp = doc.at("hyperparameters");
    ModelShape& s = ck.model.shape;
    s.input_dim = hp.at("input_dim").get<int>();
    s.hidden_dim = hp.at("hidden_dim").get<int>();
    s.fc_dim = hp.at("fc_dim").get<int>();
    s.seq_len = hp.at("seq_len").get<int>();
    s.pooling = parse_pooling(hp.at("pooling").get<std::string>());
    check_shape(s);

    const json& enc = doc.at("encoding");
    ck.encoding.n_qubits = enc.at("n_qubits").get<int>();
    ck.encoding.seq_len = enc.at("seq_len").get<std::size_t>();
    ck.encoding.placement = parse_cnot_placement(enc.at("cnot_placement").get<std::string>());
    ck.encoding.scale = enc.at("feature_scale").get<double>();
    if (ck.encoding.input_dim() != s.input_dim ||
        ck.encoding.seq_len != static_cast<std::size_t>(s.seq_len)) {
        throw std::runtime_error("checkpoint: encoding and model dimensions disagree");
    }

    ck.model.params = Parameters::zeros(s);
    const json& tensors = doc.at("tensors");
    const auto names = Parameters::names();
    auto ts = ck.model.params.tensors();
    for (std::size_t k = 0; k < Parameters::kTensorCount; ++k) {
        tensor_from_json(tensors.at(std::string(names[k])), *ts[k], names[k]);
    }
    return ck;
}

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << checkpoint_to_string(checkpoint);
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return checkpoint_from_string(ss.str());
}

}  // namespace entcap
