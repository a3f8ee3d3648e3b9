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

#include "entcap/encoding.hpp"

#include <optional>

namespace entcap {

std::string_view to_string(CnotPlacement placement) {
    return placement == CnotPlacement::Diagonal ? "diagonal" : "off-diagonal";
}

CnotPlacement parse_cnot_placement(std::string_view name) {
    if (name == "diagonal") return CnotPlacement::Diagonal;
    if (name == "off-diagonal") return CnotPlacement::OffDiagonal;
    throw std::invalid_argument("unknown CNOT placement '" + std::string(name) + "'");
}

DecodeError::DecodeError(std::size_t step, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + ": " + what), step_(step) {}

namespace {

double rotation_code(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return kCodeRX;
        case GateKind::RY:
            return kCodeRY;
        case GateKind::RZ:
            return kCodeRZ;
        case GateKind::CNOT:
            break;
    }
    throw std::logic_error("rotation_code: not a rotation");
}

std::optional<GateKind> kind_for_code(double code) {
    if (code == kCodeRX) return GateKind::RX;
    if (code == kCodeRY) return GateKind::RY;
    if (code == kCodeRZ) return GateKind::RZ;
    return std::nullopt;
}

struct Entry {
    int row;
    int col;
    double value;
};

// nullopt for a padding step.
std::optional<Gate> decode_step(const GateEncodingMatrix& m, CnotPlacement placement,
                                std::size_t step) {
    std::vector<Entry> nonzero;
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            const double v = m(r, c);
            if (v == 0.0) continue;
            if (v != kCodeRX && v != kCodeRY && v != kCodeRZ && v != kCodeCNOT && v != -kCodeCNOT) {
                throw DecodeError(step, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                            ") = " + std::to_string(v) + " is not a gate code");
            }
            nonzero.push_back({r, c, v});
        }
    }
    if (nonzero.empty()) return std::nullopt;

    if (nonzero.size() == 1) {
        const Entry& e = nonzero.front();
        const auto kind = kind_for_code(e.value);
        if (!kind || e.row != e.col) {
            throw DecodeError(step, "single nonzero entry must be a rotation code on the diagonal");
        }
        return Gate::rotation(*kind, e.row);
    }
    if (nonzero.size() == 2) {
        const Entry* plus = nullptr;
        const Entry* minus = nullptr;
        for (const Entry& e : nonzero) {
            if (e.value == kCodeCNOT) plus = &e;
            if (e.value == -kCodeCNOT) minus = &e;
        }
        if (!plus || !minus) {
            throw DecodeError(step, "two-entry step must hold +40 and -40");
        }
        if (placement == CnotPlacement::Diagonal) {
            if (plus->row != plus->col || minus->row != minus->col) {
                throw DecodeError(step, "diagonal CNOT codes must sit on the diagonal");
            }
            return Gate::cnot(plus->row, minus->row);
        }
        if (plus->row == plus->col || plus->row != minus->col || plus->col != minus->row) {
            throw DecodeError(step, "off-diagonal CNOT codes must sit at (c,t) and (t,c)");
        }
        return Gate::cnot(plus->row, plus->col);
    }
    throw DecodeError(step, std::to_string(nonzero.size()) + " nonzero entries");
}

}  // namespace

GateEncodingMatrix encode_gate(const Gate& gate, int n_qubits, CnotPlacement placement) {
    for (int a = 0; a < gate.arity(); ++a) {
        if (gate.qubits[a] < 0 || gate.qubits[a] >= n_qubits) {
            throw std::out_of_range("encode_gate: qubit " + std::to_string(gate.qubits[a]) +
                                    " outside n = " + std::to_string(n_qubits));
        }
    }
    GateEncodingMatrix m = GateEncodingMatrix::Zero(n_qubits, n_qubits);
    if (is_rotation(gate.kind)) {
        m(gate.qubits[0], gate.qubits[0]) = rotation_code(gate.kind);
        return m;
    }
    const int c = gate.control();
    const int t = gate.target();
    if (c == t) {
        throw std::invalid_argument("encode_gate: CNOT control == target");
    }
    if (placement == CnotPlacement::Diagonal) {
        m(c, c) = kCodeCNOT;
        m(t, t) = -kCodeCNOT;
    } else {
        m(c, t) = kCodeCNOT;
        m(t, c) = -kCodeCNOT;
    }
    return m;
}

EncodedCircuit encode_circuit(const Circuit& circuit, std::size_t seq_len,
                              CnotPlacement placement) {
    if (circuit.size() > seq_len) {
        throw CapacityError("encode_circuit: circuit has " + std::to_string(circuit.size()) +
                            " gates, capacity is " + std::to_string(seq_len));
    }
    const int n = circuit.n_qubits();
    EncodedCircuit out;
    out.n_qubits = n;
    out.placement = placement;
    out.steps.reserve(seq_len);
    for (const Gate& g : circuit.gates()) out.steps.push_back(encode_gate(g, n, placement));
    while (out.steps.size() < seq_len) out.steps.push_back(GateEncodingMatrix::Zero(n, n));
    return out;
}

Circuit decode_circuit(const EncodedCircuit& encoded) {
    const int n = encoded.n_qubits;
    std::vector<Gate> gates;
    bool padding_seen = false;
    for (std::size_t k = 0; k < encoded.steps.size(); ++k) {
        const GateEncodingMatrix& m = encoded.steps[k];
        if (m.rows() != n || m.cols() != n) {
            throw DecodeError(k, "matrix is not " + std::to_string(n) + "x" + std::to_string(n));
        }
        const std::optional<Gate> gate = decode_step(m, encoded.placement, k);
        if (!gate) {
            padding_seen = true;
            continue;
        }
        if (padding_seen) {
            throw DecodeError(k, "gate step after padding");
        }
        gates.push_back(*gate);
    }
    return Circuit(n, std::move(gates), Strategy::Manual);
}

Eigen::MatrixXd to_feature_sequence(const EncodedCircuit& encoded, double scale) {
    if (!(scale > 0.0)) {
        throw std::invalid_argument("to_feature_sequence: scale must be positive");
    }
    const int n = encoded.n_qubits;
    Eigen::MatrixXd features(static_cast<Eigen::Index>(encoded.steps.size()), n * n);
    for (std::size_t t = 0; t < encoded.steps.size(); ++t) {
        const GateEncodingMatrix& m = encoded.steps[t];
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) {
                features(static_cast<Eigen::Index>(t), r * n + c) = m(r, c) / scale;
            }
        }
    }
    return features;
}

Eigen::MatrixXd circuit_features(const Circuit& circuit, const EncodingConfig& config) {
    if (circuit.n_qubits() != config.n_qubits) {
        throw std::invalid_argument("circuit has " + std::to_string(circuit.n_qubits()) +
                                    " qubits, encoding expects " +
                                    std::to_string(config.n_qubits));
    }
    return to_feature_sequence(encode_circuit(circuit, config.seq_len, config.placement),
                               config.scale);
}

}  // namespace entcap
