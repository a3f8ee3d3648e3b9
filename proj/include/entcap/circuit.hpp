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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entcap/random.hpp"

namespace entcap {

inline constexpr std::size_t kDefaultGateBudget = 30;

enum class GateKind { RX, RY, RZ, CNOT };

inline constexpr std::array<GateKind, 4> kAllGateKinds = {GateKind::RX, GateKind::RY, GateKind::RZ,
                                                         GateKind::CNOT};

std::string_view to_string(GateKind kind);
std::optional<GateKind> parse_gate_kind(std::string_view name);

inline bool is_rotation(GateKind kind) { return kind != GateKind::CNOT; }

/// A single gate. Rotation gates act on qubits[0]; CNOT uses
/// qubits = {control, target}. Angles are not stored here.
struct Gate {
    GateKind kind = GateKind::RX;
    std::array<int, 2> qubits = {0, -1};

    static Gate rotation(GateKind kind, int qubit);
    static Gate rx(int qubit) { return rotation(GateKind::RX, qubit); }
    static Gate ry(int qubit) { return rotation(GateKind::RY, qubit); }
    static Gate rz(int qubit) { return rotation(GateKind::RZ, qubit); }
    static Gate cnot(int control, int target);

    int arity() const { return kind == GateKind::CNOT ? 2 : 1; }
    int control() const { return qubits[0]; }
    int target() const { return qubits[1]; }

    bool operator==(const Gate&) const = default;
};

enum class Strategy { GateStrategy, LayerStrategy, Manual };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> parse_strategy(std::string_view name);

/// Ordered gate list over a fixed register. Immutable after construction;
/// the constructor rejects gates that reference qubits outside [0, n_qubits)
/// or CNOTs whose control equals their target.
class Circuit {
   public:
    Circuit(int n_qubits, std::vector<Gate> gates, Strategy strategy = Strategy::Manual);

    int n_qubits() const { return n_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    Strategy strategy() const { return strategy_; }
    std::size_t size() const { return gates_.size(); }

    bool operator==(const Circuit&) const = default;

   private:
    int n_qubits_;
    std::vector<Gate> gates_;
    Strategy strategy_;
};

/// Length of the parameter vector: number of rotation gates.
std::size_t param_count(const Circuit& circuit);

/// True when the circuit contains no two-qubit gate, so every output state is
/// a product state.
bool is_entanglement_free(const Circuit& circuit);

/// Random structure: each gate's kind uniform over the four kinds, rotations
/// on a uniform qubit, CNOT on a uniform ordered pair of distinct qubits.
Circuit generate_gate_strategy(int n_qubits, std::size_t n_gates, RandomSource& rng);

/// Layered structure: each layer is one kind on one parity class. Rotation
/// layers cover every qubit of that parity; CNOT layers cover adjacent pairs
/// (p, p+1), (p+2, p+3), ... starting at parity p with the lower qubit as
/// control and no wrap-around. The last layer is cut to hit n_gates exactly.
Circuit generate_layer_strategy(int n_qubits, std::size_t n_gates, RandomSource& rng);

/// `count` circuits, each built by a strategy chosen with probability 1/2.
std::vector<Circuit> generate_mixed(int n_qubits, std::size_t n_gates, std::size_t count,
                                    RandomSource& rng);

/// Placements of a single layer before truncation.
std::vector<Gate> layer_placements(int n_qubits, GateKind kind, int parity);

}  // namespace entcap
