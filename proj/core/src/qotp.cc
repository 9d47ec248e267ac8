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

#include "qhekm/qotp.h"

#include <cctype>

namespace qhekm {

KeySet::KeySet(std::vector<KeyBitPair> p) : pairs(std::move(p)) {
    for (const auto &k : pairs) {
        if (k.a > 1 || k.b > 1) {
            throw InputError("key bits must be 0 or 1");
        }
    }
}

KeySet KeySet::zeros(int qubit_count) {
    return KeySet(std::vector<KeyBitPair>(static_cast<std::size_t>(qubit_count)));
}

std::string KeySet::a_bits() const {
    std::string out;
    for (const auto &k : pairs) {
        out.push_back(k.a ? '1' : '0');
    }
    return out;
}

std::string KeySet::b_bits() const {
    std::string out;
    for (const auto &k : pairs) {
        out.push_back(k.b ? '1' : '0');
    }
    return out;
}

std::string KeySet::str() const {
    std::string out;
    for (std::size_t i = 0; i < pairs.size(); i++) {
        if (i) {
            out += ",";
        }
        out += "{" + std::to_string(pairs[i].a) + "," + std::to_string(pairs[i].b) + "}";
    }
    return out;
}

KeySet parse_keyset(const std::string &text) {
    std::string compact;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            compact.push_back(c);
        }
    }
    std::vector<KeyBitPair> pairs;
    std::size_t i = 0;
    auto bit = [&](char c) -> std::uint8_t {
        if (c != '0' && c != '1') {
            throw InputError("malformed keyset '" + text + "'");
        }
        return static_cast<std::uint8_t>(c - '0');
    };
    while (i < compact.size()) {
        if (compact.size() - i < 5 || compact[i] != '{' || compact[i + 2] != ',' || compact[i + 4] != '}') {
            throw InputError("malformed keyset '" + text + "'");
        }
        pairs.push_back({bit(compact[i + 1]), bit(compact[i + 3])});
        i += 5;
        if (i < compact.size()) {
            if (compact[i] != ',' || i + 1 == compact.size()) {
                throw InputError("malformed keyset '" + text + "'");
            }
            i++;
        }
    }
    if (pairs.empty()) {
        throw InputError("empty keyset");
    }
    return KeySet(std::move(pairs));
}

KeySet random_keyset(int qubit_count, Rng &rng) {
    if (qubit_count < 1) {
        throw InputError("keyset needs at least one qubit");
    }
    std::bernoulli_distribution coin(0.5);
    std::vector<KeyBitPair> pairs(static_cast<std::size_t>(qubit_count));
    for (auto &k : pairs) {
        k.a = coin(rng);
        k.b = coin(rng);
    }
    return KeySet(std::move(pairs));
}

namespace {

void check_size(const PureState &state, const KeySet &keys) {
    if (keys.size() != state.qubit_count()) {
        throw InputError("keyset has " + std::to_string(keys.size()) + " pairs for a " +
                         std::to_string(state.qubit_count()) + "-qubit state");
    }
}

void apply_pad(PureState &state, const KeySet &keys) {
    for (int q = 0; q < keys.size(); q++) {
        if (keys[q].b) {
            state.apply(GateOp{GateKind::Z, {q}});
        }
        if (keys[q].a) {
            state.apply(GateOp{GateKind::X, {q}});
        }
    }
}

}  // namespace

PureState encrypt(PureState state, const KeySet &keys) {
    check_size(state, keys);
    apply_pad(state, keys);
    return state;
}

PureState decrypt(PureState state, const KeySet &keys) {
    check_size(state, keys);
    apply_pad(state, keys);
    return state;
}

std::string decrypt_bits(const std::string &bits, const KeySet &keys) {
    if (static_cast<int>(bits.size()) != keys.size()) {
        throw InputError("bitstring '" + bits + "' does not match keyset length " + std::to_string(keys.size()));
    }
    std::string out = bits;
    for (int q = 0; q < keys.size(); q++) {
        if (keys[q].a) {
            out[q] = out[q] == '0' ? '1' : '0';
        }
    }
    return out;
}

ShotHistogram decrypt_histogram(const ShotHistogram &histogram, const KeySet &keys) {
    ShotHistogram out;
    out.shots = histogram.shots;
    for (const auto &[bits, count] : histogram.counts) {
        out.counts[decrypt_bits(bits, keys)] += count;
    }
    return out;
}

CMatrix key_average_density(const PureState &plaintext) {
    int n = plaintext.qubit_count();
    if (n > 3) {
        throw InputError("key averaging enumerates 4^n keysets and is capped at 3 qubits");
    }
    std::size_t dim = plaintext.dim();
    std::size_t keysets = std::size_t{1} << (2 * n);
    CMatrix rho(dim);
    for (std::size_t code = 0; code < keysets; code++) {
        std::vector<KeyBitPair> pairs(static_cast<std::size_t>(n));
        for (int q = 0; q < n; q++) {
            pairs[q].a = (code >> (2 * q)) & 1;
            pairs[q].b = (code >> (2 * q + 1)) & 1;
        }
        auto cipher = encrypt(plaintext, KeySet(std::move(pairs)));
        for (std::size_t r = 0; r < dim; r++) {
            for (std::size_t c = 0; c < dim; c++) {
                rho(r, c) += cipher[r] * std::conj(cipher[c]);
            }
        }
    }
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            rho(r, c) /= static_cast<double>(keysets);
        }
    }
    return rho;
}

}  // namespace qhekm
