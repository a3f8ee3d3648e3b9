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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "entcap/circuit.hpp"

namespace entcap {

using Amplitude = std::complex<double>;

/// Pure state of n qubits as 2^n amplitudes.
///
/// Basis ordering: index x = b_1 b_2 ... b_n in binary with qubit 0 (the
/// first qubit) as the most significant bit, so qubit q corresponds to bit
/// (n - 1 - q) of the index. |10> on two qubits is index 2.
class StateVector {
   public:
    /// |0...0>.
    explicit StateVector(int n_qubits);

    /// Takes amplitudes as given; size must be a power of two >= 2. The norm
    /// is not checked here (see mw_distance), use normalized() to rescale.
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes);

    /// Computational basis state with the given index.
    static StateVector basis(int n_qubits, std::uint64_t index);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    double norm_squared() const;
    StateVector normalized() const;

    /// In-place gate application; see apply_gate for the conventions.
    void apply(const Gate& gate, std::optional<double> angle);

   private:
    StateVector(int n_qubits, std::vector<Amplitude> amps);

    int n_qubits_;
    std::vector<Amplitude> amps_;
};

/// Tensor product a ⊗ b with a on the leading (more significant) qubits.
StateVector tensor(const StateVector& a, const StateVector& b);

/// U|psi> with RX(t)=exp(-i t X/2), RY(t)=exp(-i t Y/2), RZ(t)=exp(-i t Z/2),
/// and CNOT flipping the target when the control bit is 1. `angle` must be
/// present exactly for rotation gates.
StateVector apply_gate(const StateVector& state, const Gate& gate, std::optional<double> angle);

/// U(theta)|0...0>, consuming params in rotation-gate order.
StateVector run_circuit(const Circuit& circuit, std::span<const double> params);

/// Gamma_i(b)|psi>: the (n-1)-qubit amplitudes of basis states whose bit for
/// `qubit` equals `bit`, with that bit removed. Not normalized, which is why
/// this is a separate type from StateVector.
struct ProjectedAmplitudes {
    std::vector<Amplitude> values;

    double norm_squared() const;
};

ProjectedAmplitudes gamma_project(const StateVector& state, int qubit, int bit);

/// (1/2) sum_{i,j} |u_i v_j - u_j v_i|^2.
double generalized_distance(std::span<const Amplitude> u, std::span<const Amplitude> v);

/// Meyer-Wallach measure (4/n) sum_i D(Gamma_i(0)psi, Gamma_i(1)psi),
/// evaluated from the generalized-distance definition. Throws if the state's
/// squared norm deviates from 1 by more than 1e-8 or if n < 2.
double mw_distance(const StateVector& state);

/// Same quantity through single-qubit purities: 2 (1 - mean_i Tr rho_i^2).
/// Independent of mw_distance; used as its oracle.
double mw_purity(const StateVector& state);

inline constexpr std::size_t kDefaultSampleCount = 1000;

/// Sampled entangling capability: mean MW over parameter vectors whose angles
/// are i.i.d. Uniform[0, 2pi).
struct EntEstimate {
    double value = 0.0;
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    double std_error = 0.0;  ///< sample std / sqrt(sample_count); 0 when sample_count == 1

    bool operator==(const EntEstimate&) const = default;
};

/// Deterministic given `seed`. If `per_sample` is non-null it receives every
/// MW value that entered the mean. Circuits without CNOT gates only produce
/// product states and report exactly 0 without simulating.
EntEstimate estimate_ent(const Circuit& circuit, std::size_t sample_count, std::uint64_t seed,
                         std::vector<double>* per_sample = nullptr);

struct ConvergenceRow {
    std::size_t sample_count = 0;
    double mean = 0.0;  ///< mean of the repetition estimates
    double std = 0.0;   ///< sample std across repetitions
};

/// For each sample count, `repetitions` independent estimates (seeds drawn
/// from rng) summarized as mean and spread.
std::vector<ConvergenceRow> convergence_sweep(const Circuit& circuit,
                                              std::span<const std::size_t> sample_counts,
                                              std::size_t repetitions, RandomSource& rng);

}  // namespace entcap
