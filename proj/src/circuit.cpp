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

#include "entcap/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace entcap {

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return "RX";
        case GateKind::RY:
            return "RY";
        case GateKind::RZ:
            return "RZ";
        case GateKind::CNOT:
            return "CNOT";
    }
    return "?";
}

std::optional<GateKind> parse_gate_kind(std::string_view name) {
    for (GateKind k : kAllGateKinds) {
        if (to_string(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Strategy strategy) {
    switch (strategy) {
        case Strategy::GateStrategy:
            return "gate";
        case Strategy::LayerStrategy:
            return "layer";
        case Strategy::Manual:
            return "manual";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
    if (name == "gate") return Strategy::GateStrategy;
    if (name == "layer") return Strategy::LayerStrategy;
    if (name == "manual") return Strategy::Manual;
    return std::nullopt;
}

Gate Gate::rotation(GateKind kind, int qubit) {
    if (!is_rotation(kind)) {
        throw std::invalid_argument("Gate::rotation: CNOT is not a rotation");
    }
    return Gate{kind, {qubit, -1}};
}

Gate Gate::cnot(int control, int target) { return Gate{GateKind::CNOT, {control, target}}; }

Circuit::Circuit(int n_qubits, std::vector<Gate> gates, Strategy strategy)
    : n_qubits_(n_qubits), gates_(std::move(gates)), strategy_(strategy) {
    if (n_qubits_ < 1) {
        throw std::invalid_argument("Circuit: n_qubits must be positive");
    }
    for (std::size_t k = 0; k < gates_.size(); ++k) {
        const Gate& g = gates_[k];
        for (int a = 0; a < g.arity(); ++a) {
            if (g.qubits[a] < 0 || g.qubits[a] >= n_qubits_) {
                throw std::out_of_range("Circuit: gate " + std::to_string(k) +
                                        " references qubit " + std::to_string(g.qubits[a]) +
                                        " outside a " + std::to_string(n_qubits_) +
                                        "-qubit register");
            }
        }
        if (g.kind == GateKind::CNOT && g.control() == g.target()) {
            throw std::invalid_argument("Circuit: gate " + std::to_string(k) +
                                        " is a CNOT with control == target");
        }
        if (g.kind != GateKind::CNOT && g.qubits[1] != -1) {
            throw std::invalid_argument("Circuit: rotation gate " + std::to_string(k) +
                                        " carries a second qubit");
        }
    }
}

std::size_t param_count(const Circuit& circuit) {
    return static_cast<std::size_t>(std::count_if(circuit.gates().begin(), circuit.gates().end(),
                                                  [](const Gate& g) { return is_rotation(g.kind); }));
}

bool is_entanglement_free(const Circuit& circuit) {
    return std::none_of(circuit.gates().begin(), circuit.gates().end(),
                        [](const Gate& g) { return g.kind == GateKind::CNOT; });
}

namespace {

void check_generator_args(int n_qubits, std::size_t n_gates) {
    if (n_qubits < 2) {
        throw std::invalid_argument("generator: n_qubits must be >= 2, got " +
                                    std::to_string(n_qubits));
    }
    if (n_gates < 1) {
        throw std::invalid_argument("generator: n_gates must be >= 1");
    }
}

GateKind draw_kind(RandomSource& rng) { return kAllGateKinds[rng.below(kAllGateKinds.size())]; }

}  // namespace

Circuit generate_gate_strategy(int n_qubits, std::size_t n_gates, RandomSource& rng) {
    check_generator_args(n_qubits, n_gates);
    const auto n = static_cast<std::uint64_t>(n_qubits);
    std::vector<Gate> gates;
    gates.reserve(n_gates);
    for (std::size_t k = 0; k < n_gates; ++k) {
        const GateKind kind = draw_kind(rng);
        if (is_rotation(kind)) {
            gates.push_back(Gate::rotation(kind, static_cast<int>(rng.below(n))));
        } else {
            // Uniform ordered pair: control first, then target among the rest.
            const int control = static_cast<int>(rng.below(n));
            int target = static_cast<int>(rng.below(n - 1));
            if (target >= control) ++target;
            gates.push_back(Gate::cnot(control, target));
        }
    }
    return Circuit(n_qubits, std::move(gates), Strategy::GateStrategy);
}

std::vector<Gate> layer_placements(int n_qubits, GateKind kind, int parity) {
    std::vector<Gate> layer;
    if (is_rotation(kind)) {
        for (int q = parity; q < n_qubits; q += 2) {
            layer.push_back(Gate::rotation(kind, q));
        }
    } else {
        for (int q = parity; q + 1 < n_qubits; q += 2) {
            layer.push_back(Gate::cnot(q, q + 1));
        }
    }
    return layer;
}

Circuit generate_layer_strategy(int n_qubits, std::size_t n_gates, RandomSource& rng) {
    check_generator_args(n_qubits, n_gates);
    std::vector<Gate> gates;
    gates.reserve(n_gates);
    while (gates.size() < n_gates) {
        const GateKind kind = draw_kind(rng);
        const int parity = static_cast<int>(rng.below(2));
        // An odd-parity CNOT layer on two qubits is empty; the draw still
        // counts as a layer and the loop continues.
        for (const Gate& g : layer_placements(n_qubits, kind, parity)) {
            if (gates.size() == n_gates) break;
            gates.push_back(g);
        }
    }
    return Circuit(n_qubits, std::move(gates), Strategy::LayerStrategy);
}

std::vector<Circuit> generate_mixed(int n_qubits, std::size_t n_gates, std::size_t count,
                                    RandomSource& rng) {
    check_generator_args(n_qubits, n_gates);
    if (count < 1) {
        throw std::invalid_argument("generate_mixed: count must be >= 1");
    }
    std::vector<Circuit> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (rng.below(2) == 0) {
            out.push_back(generate_gate_strategy(n_qubits, n_gates, rng));
        } else {
            out.push_back(generate_layer_strategy(n_qubits, n_gates, rng));
        }
    }
    return out;
}

}  // namespace entcap
