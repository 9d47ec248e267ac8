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

#ifndef QHEKM_QOTP_H
#define QHEKM_QOTP_H

#include <cstdint>
#include <string>
#include <vector>

#include "qhekm/statevector.h"

namespace qhekm {

/// One qubit's pad: the ciphertext is X^a Z^b applied to the plaintext.
struct KeyBitPair {
    std::uint8_t a = 0;
    std::uint8_t b = 0;

    bool operator==(const KeyBitPair &) const = default;
};

/// One KeyBitPair per qubit, in qubit order.
struct KeySet {
    std::vector<KeyBitPair> pairs;

    KeySet() = default;
    explicit KeySet(std::vector<KeyBitPair> p);
    static KeySet zeros(int qubit_count);

    int size() const { return static_cast<int>(pairs.size()); }
    KeyBitPair &operator[](int q) { return pairs.at(static_cast<std::size_t>(q)); }
    const KeyBitPair &operator[](int q) const { return pairs.at(static_cast<std::size_t>(q)); }

    /// The X-mask as a bitstring, e.g. "100".
    std::string a_bits() const;
    std::string b_bits() const;
    /// "{1,1},{0,1},{0,1}"
    std::string str() const;

    bool operator==(const KeySet &) const = default;
};

/// Parses "{1,1},{0,1},{0,1}" (whitespace tolerated).
KeySet parse_keyset(const std::string &text);

KeySet random_keyset(int qubit_count, Rng &rng);

/// Applies Z^b then X^a on every qubit.
PureState encrypt(PureState state, const KeySet &keys);

/// Applies the same X^a Z^b operator again; equals the plaintext up to a global phase.
PureState decrypt(PureState state, const KeySet &keys);

/// Decrypts measured bitstrings by XOR with the a-bits. Z^b never changes
/// computational-basis outcomes, so only the a-bits matter here.
ShotHistogram decrypt_histogram(const ShotHistogram &histogram, const KeySet &keys);
std::string decrypt_bits(const std::string &bits, const KeySet &keys);

/// Average of encrypt(plaintext, k) over all 4^n keysets, as a density matrix.
/// For every plaintext this is the maximally mixed state I / 2^n. n <= 3.
CMatrix key_average_density(const PureState &plaintext);

}  // namespace qhekm

#endif
