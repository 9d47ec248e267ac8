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

#ifndef QHEKM_SWAPTEST_H
#define QHEKM_SWAPTEST_H

#include <cstdint>

#include "qhekm/keyledger.h"
#include "qhekm/protocol.h"
#include "qhekm/qotp.h"
#include "qhekm/statevector.h"

namespace qhekm {

/// Ancilla-zero frequency of a SwapTest and the overlap it implies:
/// P(0) = 1/2 + 1/2 |<a|b>|^2, so similarity = 2 P(0) - 1 (clamped at 0).
struct SimilarityEstimate {
    double p0 = 0;
    double similarity = 0;
    std::uint64_t shots = 0;  // 0 for analytic estimates
    double std_error = 0;

    static SimilarityEstimate from_p0(double p0, std::uint64_t shots);
};

/// Layout for registers of size r: qubit 0 is the ancilla, qubits 1..r hold
/// state a and qubits r+1..2r hold state b.
int swaptest_width(int register_size);

/// Client-side preparation of both registers on the 1 + 2r qubit layout.
Circuit swaptest_prep(const Circuit &prep_a, const Circuit &prep_b);

/// H(0), CSWAP(0; a_i, b_i) for each position, H(0). With `decompose_cswap`
/// every CSWAP is expanded to Clifford+T so the circuit can run on ciphertext.
Circuit swaptest_eval_circuit(int register_size, bool decompose_cswap);

/// Preparation followed by the SwapTest.
Circuit build_swaptest(const Circuit &prep_a, const Circuit &prep_b, bool decompose_cswap = false);

/// Exact ancilla-zero probability for two register states.
double swaptest_p0(const PureState &a, const PureState &b);

/// Sampled SwapTest on plaintext registers.
SimilarityEstimate similarity_plain(const PureState &a, const PureState &b, std::uint64_t shots, Rng &rng,
                                    double noise_p = 0.0);

struct EncryptedSimilarity {
    SimilarityEstimate estimate;
    DelegatedResult session;
};

/// SwapTest delegated through the three-party protocol. `keys` is either one
/// register's worth of pairs (shared by both data registers) or the full
/// 1 + 2r layout with a zero ancilla key and identical halves. The returned
/// p0 is read from the client's decrypted ancilla outcomes.
EncryptedSimilarity run_encrypted_swaptest(const Circuit &prep_a, const Circuit &prep_b, const KeySet &keys,
                                           std::uint64_t shots, TGateMode mode, Rng &rng, double noise_p = 0.0);

SimilarityEstimate similarity_encrypted(const Circuit &prep_a, const Circuit &prep_b, const KeySet &keys,
                                        std::uint64_t shots, TGateMode mode, Rng &rng);

}  // namespace qhekm

#endif
