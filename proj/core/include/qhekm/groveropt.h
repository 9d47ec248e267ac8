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

#ifndef QHEKM_GROVEROPT_H
#define QHEKM_GROVEROPT_H

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qhekm/keyledger.h"
#include "qhekm/protocol.h"
#include "qhekm/qotp.h"
#include "qhekm/statevector.h"

namespace qhekm {

using MarkedSet = std::set<std::string>;

/// Classical lookup f: {0,1}^m -> non-negative integer.
struct ValueTable {
    int index_bits = 0;
    std::map<std::string, std::int64_t> values;
    std::int64_t max_value = 0;

    /// Throws unless every index of length index_bits is present and 0 <= f(a) <= max_value.
    void validate() const;
    std::int64_t at(const std::string &bits) const;
    std::size_t size() const { return std::size_t{1} << index_bits; }

    /// The 8-entry example table: f(000)=1, f(001)=3, f(111)=2, every other entry 7.
    static ValueTable reference_example();
};

/// {a : f(a) < threshold}
MarkedSet marked_set(const ValueTable &table, std::int64_t threshold);

/// Work qubits the oracle and diffusion need beyond the m index qubits (0 for m <= 3).
int grover_ancillas(int m);

/// Diagonal phase oracle: -1 exactly on the marked strings, +1 elsewhere,
/// synthesized over {X, Z, CZ, CNOT, T, Tdg} (plus Toffoli ladders on work
/// qubits when a term has degree >= 4). Width m + grover_ancillas(m).
Circuit build_phase_oracle(const MarkedSet &marked, int m);

/// Inversion about the mean on the index qubits, up to a global phase.
Circuit build_diffusion(int m);

/// `iterations` rounds of oracle then diffusion; no initial Hadamards.
Circuit grover_eval_circuit(const MarkedSet &marked, int m, int iterations);

/// Hadamards on the m index qubits of a grover-width register.
Circuit grover_prep(int m);

/// Exact outcome distribution of the index qubits after H^m and `iterations` rounds.
std::map<std::string, double> grover_distribution(const MarkedSet &marked, int m, int iterations);
double grover_marked_probability(const MarkedSet &marked, int m, int iterations);

ShotHistogram grover_search(const MarkedSet &marked, int m, int iterations, std::uint64_t shots, Rng &rng);

/// floor(pi / (4 asin(sqrt(M/N)))): the iteration count that maximizes the
/// marked-set probability. Equals floor(pi/4 sqrt(N/M)) for small M/N and is
/// 0 once M > N/2, where plain uniform sampling already does better.
int optimal_iterations(std::uint64_t n, std::uint64_t m);

struct MinRound {
    std::int64_t threshold = 0;
    std::size_t marked_count = 0;
    int grover_iterations = 0;
    std::string sampled;
    std::int64_t sampled_value = 0;
};

struct MinResult {
    std::string a_min;
    std::int64_t b_min = 0;
    int iterations_used = 0;  // Grover rounds executed
    std::vector<MinRound> trace;
};

/// Runs one Grover round and returns the measured index histogram.
using SearchBackend =
    std::function<ShotHistogram(const MarkedSet &marked, int m, int iterations, std::uint64_t shots, Rng &rng)>;

struct MinFindOptions {
    int budget_rounds = 0;  // 0 means ceil(sqrt(2^m))
    std::uint64_t shots_per_round = 8;
    std::optional<std::string> start;  // random when unset
    /// Draw the iteration count uniformly from [0, ceil(sqrt(N))) instead of
    /// using the known marked-set size.
    bool randomized_iterations = false;
    SearchBackend search;  // grover_search when empty
};

/// Threshold-lowering minimum search. Each round marks {a : f(a) < b_i}; an
/// empty set ends the search. Otherwise a Grover round is measured and the
/// lowest-valued measured index becomes the new threshold if it beats b_i.
MinResult durr_hoyer_min(const ValueTable &table, const MinFindOptions &options, Rng &rng);
MinResult durr_hoyer_min(const ValueTable &table, int budget_rounds, std::uint64_t shots_per_round, Rng &rng);

struct EncryptedGroverResult {
    ShotHistogram ciphertext;  // index qubits only
    ShotHistogram decrypted;   // index qubits only
    KeySet final_keys;         // full register, work qubits included
    DelegatedResult session;
};

/// Grover search delegated through the protocol. The client prepares H^m,
/// encrypts with `initial_keys` (length m; work qubits get the zero key).
EncryptedGroverResult encrypted_grover(const MarkedSet &marked, int m, int iterations, const KeySet &initial_keys,
                                       std::uint64_t shots, TGateMode mode, Rng &rng);
/// Same, with optimal_iterations for the marked-set size.
EncryptedGroverResult encrypted_grover(const MarkedSet &marked, int m, const KeySet &initial_keys,
                                       std::uint64_t shots, TGateMode mode, Rng &rng);

}  // namespace qhekm

#endif
