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

#include "entcap/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entcap {

namespace {

std::size_t bit_of(int n_qubits, int qubit) {
    return std::size_t{1} << static_cast<unsigned>(n_qubits - 1 - qubit);
}

void check_qubit(int n_qubits, int qubit) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " outside a " +
                                std::to_string(n_qubits) + "-qubit state");
    }
}

void check_mw_input(const StateVector& state) {
    if (state.n_qubits() < 2) {
        throw std::invalid_argument("Meyer-Wallach measure needs at least 2 qubits");
    }
    const double norm = state.norm_squared();
    if (std::abs(norm - 1.0) > 1e-8) {
        throw std::invalid_argument("Meyer-Wallach measure needs a normalized state, |psi|^2 = " +
                                    std::to_string(norm));
    }
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) {
        throw std::invalid_argument("StateVector: unsupported qubit count " +
                                    std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << static_cast<unsigned>(n_qubits), Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<Amplitude> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    const std::size_t size = amplitudes.size();
    if (size < 2 || !std::has_single_bit(size)) {
        throw std::invalid_argument("StateVector: amplitude count must be a power of two >= 2");
    }
    const int n = std::countr_zero(size);
    return StateVector(n, std::move(amplitudes));
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) {
        throw std::out_of_range("StateVector::basis: index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const Amplitude& a : amps_) total += std::norm(a);
    return total;
}

StateVector StateVector::normalized() const {
    const double norm = std::sqrt(norm_squared());
    if (norm == 0.0) {
        throw std::invalid_argument("StateVector::normalized: zero vector");
    }
    std::vector<Amplitude> out(amps_);
    for (Amplitude& a : out) a /= norm;
    return StateVector(n_qubits_, std::move(out));
}

void StateVector::apply(const Gate& gate, std::optional<double> angle) {
    if (is_rotation(gate.kind) != angle.has_value()) {
        throw std::invalid_argument(angle ? "apply_gate: CNOT takes no angle"
                                          : "apply_gate: rotation gate needs an angle");
    }
    for (int a = 0; a < gate.arity(); ++a) check_qubit(n_qubits_, gate.qubits[a]);

    const std::size_t dim = amps_.size();
    if (gate.kind == GateKind::CNOT) {
        if (gate.control() == gate.target()) {
            throw std::invalid_argument("apply_gate: CNOT control == target");
        }
        const std::size_t cbit = bit_of(n_qubits_, gate.control());
        const std::size_t tbit = bit_of(n_qubits_, gate.target());
        for (std::size_t x = 0; x < dim; ++x) {
            if ((x & cbit) && !(x & tbit)) std::swap(amps_[x], amps_[x | tbit]);
        }
        return;
    }

    const double half = *angle / 2.0;
    const double c = std::cos(half);
    const double s = std::sin(half);
    // 2x2 matrix [[m00, m01], [m10, m11]] acting on (|0>, |1>) of the qubit.
    Amplitude m00, m01, m10, m11;
    switch (gate.kind) {
        case GateKind::RX:
            m00 = c, m01 = {0.0, -s}, m10 = {0.0, -s}, m11 = c;
            break;
        case GateKind::RY:
            m00 = c, m01 = -s, m10 = s, m11 = c;
            break;
        case GateKind::RZ:
            m00 = {c, -s}, m01 = 0.0, m10 = 0.0, m11 = {c, s};
            break;
        case GateKind::CNOT:
            break;
    }
    const std::size_t bit = bit_of(n_qubits_, gate.qubits[0]);
    for (std::size_t x = 0; x < dim; ++x) {
        if (x & bit) continue;
        const Amplitude a0 = amps_[x];
        const Amplitude a1 = amps_[x | bit];
        amps_[x] = m00 * a0 + m01 * a1;
        amps_[x | bit] = m10 * a0 + m11 * a1;
    }
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<Amplitude> out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    }
    return StateVector::from_amplitudes(std::move(out));
}

StateVector apply_gate(const StateVector& state, const Gate& gate, std::optional<double> angle) {
    StateVector out = state;
    out.apply(gate, angle);
    return out;
}

StateVector run_circuit(const Circuit& circuit, std::span<const double> params) {
    const std::size_t expected = param_count(circuit);
    if (params.size() != expected) {
        throw std::invalid_argument("run_circuit: circuit takes " + std::to_string(expected) +
                                    " parameters, got " + std::to_string(params.size()));
    }
    StateVector state(circuit.n_qubits());
    std::size_t next = 0;
    for (const Gate& g : circuit.gates()) {
        if (is_rotation(g.kind)) {
            state.apply(g, params[next++]);
        } else {
            state.apply(g, std::nullopt);
        }
    }
    return state;
}

double ProjectedAmplitudes::norm_squared() const {
    double total = 0.0;
    for (const Amplitude& a : values) total += std::norm(a);
    return total;
}

ProjectedAmplitudes gamma_project(const StateVector& state, int qubit, int bit) {
    const int n = state.n_qubits();
    if (n < 2) {
        throw std::invalid_argument("gamma_project: needs at least 2 qubits");
    }
    check_qubit(n, qubit);
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("gamma_project: bit must be 0 or 1");
    }
    // Insert `bit` at position p of every (n-1)-bit index y.
    const unsigned p = static_cast<unsigned>(n - 1 - qubit);
    const std::size_t low_mask = (std::size_t{1} << p) - 1;
    const std::size_t half = state.dim() / 2;
    ProjectedAmplitudes out;
    out.values.resize(half);
    for (std::size_t y = 0; y < half; ++y) {
        const std::size_t x = ((y & ~low_mask) << 1) | (static_cast<std::size_t>(bit) << p) |
                              (y & low_mask);
        out.values[y] = state[x];
    }
    return out;
}

double generalized_distance(std::span<const Amplitude> u, std::span<const Amplitude> v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("generalized_distance: length mismatch");
    }
    // The summand is symmetric in (i, j) and vanishes on the diagonal, so
    // half the full double sum equals the sum over i < j.
    double total = 0.0;
    const std::size_t len = u.size();
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = i + 1; j < len; ++j) {
            total += std::norm(u[i] * v[j] - u[j] * v[i]);
        }
    }
    return total;
}

double mw_distance(const StateVector& state) {
    check_mw_input(state);
    const int n = state.n_qubits();
    double total = 0.0;
    for (int q = 0; q < n; ++q) {
        const ProjectedAmplitudes zero = gamma_project(state, q, 0);
        const ProjectedAmplitudes one = gamma_project(state, q, 1);
        total += generalized_distance(zero.values, one.values);
    }
    return std::min(1.0, 4.0 * total / n);
}

double mw_purity(const StateVector& state) {
    check_mw_input(state);
    const int n = state.n_qubits();
    double purity_sum = 0.0;
    for (int q = 0; q < n; ++q) {
        // rho_q = [[p0, r], [conj(r), p1]] from the partial trace over the rest.
        const std::size_t bit = bit_of(n, q);
        double p0 = 0.0;
        double p1 = 0.0;
        Amplitude r = 0.0;
        for (std::size_t x = 0; x < state.dim(); ++x) {
            if (x & bit) continue;
            const Amplitude a0 = state[x];
            const Amplitude a1 = state[x | bit];
            p0 += std::norm(a0);
            p1 += std::norm(a1);
            r += a0 * std::conj(a1);
        }
        purity_sum += p0 * p0 + p1 * p1 + 2.0 * std::norm(r);
    }
    return std::clamp(2.0 * (1.0 - purity_sum / n), 0.0, 1.0);
}

EntEstimate estimate_ent(const Circuit& circuit, std::size_t sample_count, std::uint64_t seed,
                         std::vector<double>* per_sample) {
    if (sample_count < 1) {
        throw std::invalid_argument("estimate_ent: sample_count must be >= 1");
    }
    if (circuit.n_qubits() < 2) {
        throw std::invalid_argument("estimate_ent: circuit needs at least 2 qubits");
    }
    if (per_sample) per_sample->clear();

    EntEstimate est;
    est.sample_count = sample_count;
    est.seed = seed;
    if (is_entanglement_free(circuit)) {
        if (per_sample) per_sample->assign(sample_count, 0.0);
        return est;
    }

    Rng rng(seed);
    std::vector<double> params(param_count(circuit));
    std::vector<double> values(sample_count);
    for (std::size_t s = 0; s < sample_count; ++s) {
        for (double& p : params) p = 2.0 * std::numbers::pi * rng.unit();
        values[s] = mw_distance(run_circuit(circuit, params));
    }

    double sum = 0.0;
    for (double v : values) sum += v;
    est.value = sum / static_cast<double>(sample_count);
    if (sample_count > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - est.value) * (v - est.value);
        const double sd = std::sqrt(ss / static_cast<double>(sample_count - 1));
        est.std_error = sd / std::sqrt(static_cast<double>(sample_count));
    }
    if (per_sample) *per_sample = std::move(values);
    return est;
}

std::vector<ConvergenceRow> convergence_sweep(const Circuit& circuit,
                                              std::span<const std::size_t> sample_counts,
                                              std::size_t repetitions, RandomSource& rng) {
    if (repetitions < 2) {
        throw std::invalid_argument("convergence_sweep: repetitions must be >= 2");
    }
    if (sample_counts.empty()) {
        throw std::invalid_argument("convergence_sweep: no sample counts given");
    }
    std::vector<ConvergenceRow> rows;
    for (std::size_t count : sample_counts) {
        if (count < 1) {
            throw std::invalid_argument("convergence_sweep: sample counts must be positive");
        }
        std::vector<double> estimates(repetitions);
        for (double& e : estimates) {
            const std::uint64_t seed = rng.below(std::numeric_limits<std::uint64_t>::max());
            e = estimate_ent(circuit, count, seed).value;
        }
        double mean = 0.0;
        for (double e : estimates) mean += e;
        mean /= static_cast<double>(repetitions);
        double ss = 0.0;
        for (double e : estimates) ss += (e - mean) * (e - mean);
        rows.push_back({count, mean, std::sqrt(ss / static_cast<double>(repetitions - 1))});
    }
    return rows;
}

}  // namespace entcap
