// Copyright 2026 The qhekm Authors
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

#ifndef QHEKM_STATEVECTOR_H
#define QHEKM_STATEVECTOR_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qhekm/errors.h"

namespace qhekm {

using Complex = std::complex<double>;

/// Seeded generator used everywhere randomness is consumed.
using Rng = std::mt19937_64;

/// Largest register the simulator will allocate. Defaults to 20 and can be
/// lowered or raised through the QHEKM_MAX_QUBITS environment variable.
int max_qubits();

enum class GateKind {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    CNOT,
    CZ,
    SWAP,
    CSWAP,
    TOFFOLI,
    // State-preparation rotations. Used by the client to amplitude-encode
    // data before encryption; never part of an evaluated circuit.
    RY,
    CRY,
};

std::string_view gate_name(GateKind kind);
GateKind parse_gate_name(std::string_view name);

/// Number of qubits the kind acts on. CRY is variadic and reports 0.
int gate_arity(GateKind kind);

bool is_clifford(GateKind kind);
bool is_t_type(GateKind kind);

/// A gate and the qubits it acts on. Controls come first, the target last.
struct GateOp {
    GateKind kind = GateKind::I;
    std::vector<int> targets;
    double angle = 0.0;  // RY / CRY only

    bool operator==(const GateOp &) const = default;
    std::string str() const;
};

/// Throws InputError unless the op is well formed for a register of the given size.
void validate_op(const GateOp &op, int qubit_count);

struct Circuit {
    int qubit_count = 0;
    std::vector<GateOp> ops;

    Circuit() = default;
    explicit Circuit(int n) : qubit_count(n) {}

    Circuit &add(GateKind kind, std::vector<int> targets, double angle = 0.0);
    Circuit &append(const Circuit &other);
    /// Appends `other` with its qubit i relabeled to mapping[i].
    Circuit &append_mapped(const Circuit &other, std::span<const int> mapping);
    void validate() const;
    std::size_t count(GateKind kind) const;
    bool operator==(const Circuit &) const = default;
};

/// Row-major dense complex matrix. Small; used for unitaries and density matrices.
class CMatrix {
   public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    static CMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    CMatrix operator*(const CMatrix &rhs) const;
    CMatrix adjoint() const;
    CMatrix kron(const CMatrix &rhs) const;

    /// Largest elementwise |this - other|.
    double max_abs_diff(const CMatrix &other) const;
    /// max_abs_diff after multiplying `other` by the global phase that best aligns it with this.
    double phase_aligned_diff(const CMatrix &other) const;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Local unitary of an op in the op's own qubit order (targets[0] most significant).
CMatrix gate_matrix(const GateOp &op);

/// Normalized amplitude vector over 2^n basis states. Qubit 0 is the most
/// significant bit of the basis index, so "100" means qubit 0 is set.
class PureState {
   public:
    /// |0...0> on n qubits.
    explicit PureState(int qubit_count);
    /// Takes ownership of the amplitudes; throws unless the norm is 1 within 1e-10.
    PureState(int qubit_count, std::vector<Complex> amplitudes);

    int qubit_count() const { return qubit_count_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const { return amplitudes_; }
    const Complex &operator[](std::size_t index) const { return amplitudes_[index]; }

    void apply(const GateOp &op);
    void apply(const Circuit &circuit);

    double norm_squared() const;
    std::vector<double> probabilities() const;

    bool operator==(const PureState &) const = default;

   private:
    void apply_single(int qubit, const Complex m[4]);
    void apply_controlled_single(std::span<const int> controls, int target, const Complex m[4]);

    int qubit_count_;
    std::vector<Complex> amplitudes_;
};

/// Measurement counts keyed by bitstring (leftmost character = first measured qubit).
struct ShotHistogram {
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> counts;

    double frequency(const std::string &bits) const;
    /// Marginal counts over the given positions of each key.
    ShotHistogram marginal(std::span<const int> positions) const;
    bool operator==(const ShotHistogram &) const = default;
};

std::uint64_t bits_to_index(std::string_view bits);
std::string index_to_bits(std::uint64_t index, int width);
void validate_bits(std::string_view bits);

PureState init_basis(int qubit_count, std::string_view bits);
PureState apply_op(PureState state, const GateOp &op);
PureState run_circuit(PureState state, const Circuit &circuit);

/// Marginal probability of observing `bits` on `qubits`.
double outcome_probability(const PureState &state, std::span<const int> qubits, std::string_view bits);

/// Samples `shots` i.i.d. outcomes of the measured qubits (all qubits when empty).
ShotHistogram sample_shots(const PureState &state, std::uint64_t shots, Rng &rng, std::span<const int> qubits = {});

/// Exact outcome distribution of the measured qubits (all when empty), keyed like sample_shots.
std::map<std::string, double> outcome_distribution(const PureState &state, std::span<const int> qubits = {});

/// |a> (x) |b>, with a's qubits first.
PureState tensor_product(const PureState &a, const PureState &b);

/// |<a|b>|^2.
double overlap_sq(const PureState &a, const PureState &b);

/// Clifford+T expansion of TOFFOLI or CSWAP.
std::vector<GateOp> decompose(const GateOp &op);
/// Returns the circuit with every TOFFOLI and CSWAP expanded.
Circuit decompose_circuit(const Circuit &circuit);

/// Flips every measured bit of every shot independently with probability p.
ShotHistogram apply_bitflip_noise(const ShotHistogram &histogram, double p, Rng &rng);

/// Full 2^n unitary of a circuit, built column by column from basis states.
CMatrix circuit_unitary(const Circuit &circuit);

/// Half the L1 distance between two outcome distributions.
double total_variation(const std::map<std::string, double> &p, const std::map<std::string, double> &q);

}  // namespace qhekm

#endif
