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

#include "qhekm/keyledger.h"

#include <sstream>

namespace qhekm {

std::string_view t_mode_name(TGateMode mode) {
    switch (mode) {
        case TGateMode::trusted_fresh_key:
            return "fresh";
        case TGateMode::trusted_same_key:
            return "same-key";
        case TGateMode::algebraic:
            return "algebraic";
    }
    return "?";
}

TGateMode parse_t_mode(std::string_view name) {
    if (name == "fresh" || name == "trusted_fresh_key") {
        return TGateMode::trusted_fresh_key;
    }
    if (name == "same-key" || name == "trusted_same_key") {
        return TGateMode::trusted_same_key;
    }
    if (name == "algebraic") {
        return TGateMode::algebraic;
    }
    throw InputError("unknown T-gate mode '" + std::string(name) + "' (expected fresh, same-key or algebraic)");
}

namespace {

void check_targets(const KeySet &keys, const GateOp &op) {
    validate_op(op, keys.size());
}

}  // namespace

KeySet clifford_update(KeySet keys, const GateOp &op) {
    if (!is_clifford(op.kind)) {
        throw InputError("clifford_update: " + std::string(gate_name(op.kind)) + " is not a Clifford gate");
    }
    check_targets(keys, op);
    const auto &t = op.targets;
    switch (op.kind) {
        case GateKind::H:
            std::swap(keys[t[0]].a, keys[t[0]].b);
            break;
        case GateKind::S:
        case GateKind::Sdg:
            keys[t[0]].b ^= keys[t[0]].a;
            break;
        case GateKind::CZ: {
            auto am = keys[t[0]].a;
            auto al = keys[t[1]].a;
            keys[t[0]].b ^= al;
            keys[t[1]].b ^= am;
            break;
        }
        case GateKind::CNOT:
            keys[t[0]].b ^= keys[t[1]].b;
            keys[t[1]].a ^= keys[t[0]].a;
            break;
        case GateKind::SWAP:
            std::swap(keys[t[0]], keys[t[1]]);
            break;
        default:  // I, X, Y, Z commute with the pad up to phase
            break;
    }
    return keys;
}

namespace {

CMatrix pauli(std::uint8_t a, std::uint8_t b) {
    CMatrix m(2);
    // X^a Z^b
    Complex z1 = b ? -1.0 : 1.0;
    if (a) {
        m(0, 1) = z1;
        m(1, 0) = 1;
    } else {
        m(0, 0) = 1;
        m(1, 1) = z1;
    }
    return m;
}

CMatrix pauli_string(const std::vector<KeyBitPair> &local) {
    CMatrix out = pauli(local[0].a, local[0].b);
    for (std::size_t i = 1; i < local.size(); i++) {
        out = out.kron(pauli(local[i].a, local[i].b));
    }
    return out;
}

}  // namespace

KeySet derive_rule(const GateOp &op, const KeySet &keys) {
    check_targets(keys, op);
    std::size_t k = op.targets.size();
    if (k > 2) {
        throw InputError("derive_rule supports gates on at most two qubits");
    }
    std::vector<KeyBitPair> local;
    for (int q : op.targets) {
        local.push_back(keys[q]);
    }
    CMatrix g = gate_matrix(op);
    CMatrix conjugated = g * pauli_string(local) * g.adjoint();

    std::size_t candidates = std::size_t{1} << (2 * k);
    for (std::size_t code = 0; code < candidates; code++) {
        std::vector<KeyBitPair> guess(k);
        for (std::size_t i = 0; i < k; i++) {
            guess[i].a = (code >> (2 * i)) & 1;
            guess[i].b = (code >> (2 * i + 1)) & 1;
        }
        if (conjugated.phase_aligned_diff(pauli_string(guess)) < 1e-9) {
            KeySet out = keys;
            for (std::size_t i = 0; i < k; i++) {
                out[op.targets[i]] = guess[i];
            }
            return out;
        }
    }
    throw InputError("derive_rule: " + op.str() + " does not map the key's Pauli to a Pauli");
}

TUpdate t_update(const KeySet &keys, int qubit, TGateMode mode, Rng &rng) {
    if (qubit < 0 || qubit >= keys.size()) {
        throw InputError("t_update: qubit index out of range");
    }
    TUpdate out{keys, 0};
    switch (mode) {
        case TGateMode::trusted_fresh_key: {
            std::bernoulli_distribution coin(0.5);
            out.keys[qubit].a = coin(rng);
            out.keys[qubit].b = coin(rng);
            break;
        }
        case TGateMode::trusted_same_key:
            break;
        case TGateMode::algebraic:
            out.s_correction = keys[qubit].a;
            out.keys[qubit].b ^= keys[qubit].a;
            break;
    }
    return out;
}

KeyLedger::KeyLedger(KeySet initial, TGateMode mode, Rng &rng)
    : initial_(std::move(initial)), current_(initial_), mode_(mode), rng_(rng) {
}

const LedgerEntry &KeyLedger::apply(const GateOp &op) {
    LedgerEntry entry;
    entry.step = static_cast<int>(entries_.size()) + 1;
    entry.gate = op;
    entry.s_correction_flags.assign(static_cast<std::size_t>(current_.size()), 0);
    if (is_clifford(op.kind)) {
        current_ = clifford_update(current_, op);
    } else if (is_t_type(op.kind)) {
        validate_op(op, current_.size());
        auto update = t_update(current_, op.targets[0], mode_, rng_);
        current_ = std::move(update.keys);
        entry.s_correction_flags[op.targets[0]] = update.s_correction;
    } else {
        throw InputError("key ledger cannot track " + op.str() +
                         (op.targets.size() == 3 ? "; decompose three-qubit gates first"
                                                 : "; only Clifford, T and Tdg gates run on ciphertext"));
    }
    entry.keys_after = current_;
    entries_.push_back(std::move(entry));
    return entries_.back();
}

LedgerRun run_ledger(const Circuit &circuit, const KeySet &initial, TGateMode mode, Rng &rng) {
    if (initial.size() != circuit.qubit_count) {
        throw InputError("initial keyset size does not match circuit width");
    }
    KeyLedger ledger(initial, mode, rng);
    for (const auto &op : circuit.ops) {
        ledger.apply(op);
    }
    return {initial, ledger.entries(), ledger.current()};
}

std::string ledger_csv(const LedgerRun &run) {
    std::ostringstream out;
    auto cell = [](const KeyBitPair &k) { return "\"{" + std::to_string(k.a) + "," + std::to_string(k.b) + "}\""; };
    out << "step,0";
    for (const auto &e : run.entries) {
        out << "," << e.step;
    }
    out << "\ngate,initial";
    for (const auto &e : run.entries) {
        out << ",\"" << e.gate.str() << "\"";
    }
    out << "\n";
    for (int q = 0; q < run.initial.size(); q++) {
        out << "q" << q << "," << cell(run.initial[q]);
        for (const auto &e : run.entries) {
            out << "," << cell(e.keys_after[q]);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace qhekm
