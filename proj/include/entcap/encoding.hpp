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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "entcap/circuit.hpp"

namespace entcap {

// Gate codes written into the encoding matrices.
inline constexpr double kCodeRX = 10.0;
inline constexpr double kCodeRY = 20.0;
inline constexpr double kCodeRZ = 30.0;
inline constexpr double kCodeCNOT = 40.0;  ///< +40 marks the control, -40 the target

inline constexpr double kDefaultFeatureScale = 40.0;

/// Where the two CNOT codes go. Diagonal: (c,c)=+40, (t,t)=-40.
/// OffDiagonal: (c,t)=+40, (t,c)=-40.
enum class CnotPlacement { Diagonal, OffDiagonal };

std::string_view to_string(CnotPlacement placement);
CnotPlacement parse_cnot_placement(std::string_view name);

/// n x n code matrix for one time step. All-zero means padding.
using GateEncodingMatrix = Eigen::MatrixXd;

/// Everything needed to turn a circuit into model input; stored with a
/// trained model so inference encodes exactly as training did.
struct EncodingConfig {
    int n_qubits = 6;
    std::size_t seq_len = kDefaultGateBudget;
    CnotPlacement placement = CnotPlacement::Diagonal;
    double scale = kDefaultFeatureScale;

    int input_dim() const { return n_qubits * n_qubits; }
    bool operator==(const EncodingConfig&) const = default;
};

struct EncodedCircuit {
    int n_qubits = 0;
    CnotPlacement placement = CnotPlacement::Diagonal;
    std::vector<GateEncodingMatrix> steps;  ///< gate steps first, then padding
};

class CapacityError : public std::length_error {
   public:
    using std::length_error::length_error;
};

class DecodeError : public std::runtime_error {
   public:
    DecodeError(std::size_t step, const std::string& what);
    std::size_t step() const { return step_; }

   private:
    std::size_t step_;
};

GateEncodingMatrix encode_gate(const Gate& gate, int n_qubits,
                               CnotPlacement placement = CnotPlacement::Diagonal);

/// One step per gate, then zero matrices up to `seq_len` steps. Throws
/// CapacityError if the circuit has more than seq_len gates.
EncodedCircuit encode_circuit(const Circuit& circuit, std::size_t seq_len = kDefaultGateBudget,
                              CnotPlacement placement = CnotPlacement::Diagonal);

/// Inverse of encode_circuit; padding is dropped and the strategy is Manual.
/// Throws DecodeError naming the first malformed step, including gate steps
/// that follow a padding step.
Circuit decode_circuit(const EncodedCircuit& encoded);

/// Model input: row t is step t flattened row-major and divided by `scale`,
/// giving a seq_len x n^2 matrix.
Eigen::MatrixXd to_feature_sequence(const EncodedCircuit& encoded,
                                    double scale = kDefaultFeatureScale);

/// encode_circuit + to_feature_sequence under `config`; rejects circuits on a
/// different register size.
Eigen::MatrixXd circuit_features(const Circuit& circuit, const EncodingConfig& config);

}  // namespace entcap
