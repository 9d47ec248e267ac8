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

#include "qhekm/swaptest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qhekm {

SimilarityEstimate SimilarityEstimate::from_p0(double p0, std::uint64_t shots) {
    SimilarityEstimate e;
    e.p0 = p0;
    e.similarity = std::clamp(2 * p0 - 1, 0.0, 1.0);
    e.shots = shots;
    e.std_error = shots ? std::sqrt(p0 * (1 - p0) / static_cast<double>(shots)) : 0.0;
    return e;
}

int swaptest_width(int register_size) {
    if (register_size < 1) {
        throw InputError("SwapTest registers need at least one qubit");
    }
    return 1 + 2 * register_size;
}

Circuit swaptest_prep(const Circuit &prep_a, const Circuit &prep_b) {
    if (prep_a.qubit_count != prep_b.qubit_count) {
        throw InputError("SwapTest registers differ in size: " + std::to_string(prep_a.qubit_count) + " vs " +
                         std::to_string(prep_b.qubit_count));
    }
    int r = prep_a.qubit_count;
    Circuit out(swaptest_width(r));
    std::vector<int> map_a(static_cast<std::size_t>(r)), map_b(static_cast<std::size_t>(r));
    std::iota(map_a.begin(), map_a.end(), 1);
    std::iota(map_b.begin(), map_b.end(), 1 + r);
    out.append_mapped(prep_a, map_a);
    out.append_mapped(prep_b, map_b);
    return out;
}

Circuit swaptest_eval_circuit(int register_size, bool decompose_cswap) {
    Circuit out(swaptest_width(register_size));
    out.add(GateKind::H, {0});
    for (int i = 0; i < register_size; i++) {
        out.add(GateKind::CSWAP, {0, 1 + i, 1 + register_size + i});
    }
    out.add(GateKind::H, {0});
    return decompose_cswap ? decompose_circuit(out) : out;
}

Circuit build_swaptest(const Circuit &prep_a, const Circuit &prep_b, bool decompose_cswap) {
    Circuit out = swaptest_prep(prep_a, prep_b);
    out.append(swaptest_eval_circuit(prep_a.qubit_count, decompose_cswap));
    return out;
}

namespace {

PureState swaptest_output(const PureState &a, const PureState &b) {
    if (a.qubit_count() != b.qubit_count()) {
        throw InputError("SwapTest registers differ in size");
    }
    auto input = tensor_product(PureState(1), tensor_product(a, b));
    return run_circuit(std::move(input), swaptest_eval_circuit(a.qubit_count(), false));
}

constexpr int kAncilla[] = {0};

double ancilla_zero_frequency(const ShotHistogram &h) {
    return h.marginal(kAncilla).frequency("0");
}

}  // namespace

double swaptest_p0(const PureState &a, const PureState &b) {
    return outcome_probability(swaptest_output(a, b), kAncilla, "0");
}

SimilarityEstimate similarity_plain(const PureState &a, const PureState &b, std::uint64_t shots, Rng &rng,
                                    double noise_p) {
    auto hist = sample_shots(swaptest_output(a, b), shots, rng, kAncilla);
    if (noise_p > 0) {
        hist = apply_bitflip_noise(hist, noise_p, rng);
    }
    return SimilarityEstimate::from_p0(hist.frequency("0"), shots);
}

EncryptedSimilarity run_encrypted_swaptest(const Circuit &prep_a, const Circuit &prep_b, const KeySet &keys,
                                           std::uint64_t shots, TGateMode mode, Rng &rng, double noise_p) {
    Circuit prep = swaptest_prep(prep_a, prep_b);
    int r = prep_a.qubit_count;
    KeySet full;
    if (keys.size() == r) {
        full = KeySet::zeros(1);
        full.pairs.insert(full.pairs.end(), keys.pairs.begin(), keys.pairs.end());
        full.pairs.insert(full.pairs.end(), keys.pairs.begin(), keys.pairs.end());
    } else if (keys.size() == swaptest_width(r)) {
        if (keys[0] != KeyBitPair{}) {
            throw InputError("the SwapTest ancilla is measured in plaintext and must carry the zero key");
        }
        for (int i = 0; i < r; i++) {
            if (keys[1 + i] != keys[1 + r + i]) {
                throw InputError("both SwapTest registers must share one key; position " + std::to_string(i) +
                                 " differs (" + keys.str() + ")");
            }
        }
        full = keys;
    } else {
        throw InputError("keyset of size " + std::to_string(keys.size()) + " fits neither one register (" +
                         std::to_string(r) + ") nor the full SwapTest layout (" + std::to_string(swaptest_width(r)) +
                         ")");
    }
    DelegationOptions options{shots, mode, noise_p};
    auto session = run_delegated(prep, swaptest_eval_circuit(r, true), full, options, rng);
    auto estimate = SimilarityEstimate::from_p0(ancilla_zero_frequency(session.decrypted), shots);
    return {estimate, std::move(session)};
}

SimilarityEstimate similarity_encrypted(const Circuit &prep_a, const Circuit &prep_b, const KeySet &keys,
                                        std::uint64_t shots, TGateMode mode, Rng &rng) {
    return run_encrypted_swaptest(prep_a, prep_b, keys, shots, mode, rng).estimate;
}

}  // namespace qhekm
