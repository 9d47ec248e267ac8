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

#ifndef QHEKM_KEYLEDGER_H
#define QHEKM_KEYLEDGER_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qhekm/qotp.h"
#include "qhekm/statevector.h"

namespace qhekm {

/// How a T or Tdg gate on ciphertext is handled.
enum class TGateMode {
    /// Trusted party decrypts the qubit, applies T, re-encrypts under a fresh random pair.
    trusted_fresh_key,
    /// Same as above but re-encrypts under the pair it removed.
    trusted_same_key,
    /// T is applied to the ciphertext directly and the resulting S^a error is
    /// cancelled by a correction gate; key becomes (a, a xor b).
    algebraic,
};

std::string_view t_mode_name(TGateMode mode);
/// Accepts "fresh", "same-key", "algebraic" (and the enumerator spellings).
TGateMode parse_t_mode(std::string_view name);

struct LedgerEntry {
    int step = 0;  // 1-based position in the circuit
    GateOp gate;
    KeySet keys_after;
    std::vector<std::uint8_t> s_correction_flags;  // per qubit; only algebraic mode sets these
};

/// Pauli-frame rule table for Clifford gates:
///   H: (a, b) -> (b, a)            S, Sdg: (a, b) -> (a, a^b)
///   CZ(m, l): b_m ^= a_l, b_l ^= a_m
///   CNOT(m -> l): b_m ^= b_l, a_l ^= a_m
///   SWAP exchanges pairs; I, X, Y, Z leave keys unchanged.
KeySet clifford_update(KeySet keys, const GateOp &op);

/// Brute-force rule: finds the Pauli P' with G P G^dag = phase * P' by direct
/// matrix computation over the op's qubits. Arity <= 2.
KeySet derive_rule(const GateOp &op, const KeySet &keys);

struct TUpdate {
    KeySet keys;
    std::uint8_t s_correction = 0;
};

/// Key update for a T or Tdg on `qubit`. In algebraic mode the correction gate
/// is S^a after T, or Sdg^a after Tdg.
TUpdate t_update(const KeySet &keys, int qubit, TGateMode mode, Rng &rng);

/// Incremental ledger; the trusted party advances it one gate at a time.
class KeyLedger {
   public:
    KeyLedger(KeySet initial, TGateMode mode, Rng &rng);

    const LedgerEntry &apply(const GateOp &op);

    TGateMode mode() const { return mode_; }
    const KeySet &initial() const { return initial_; }
    const KeySet &current() const { return current_; }
    const std::vector<LedgerEntry> &entries() const { return entries_; }

   private:
    KeySet initial_;
    KeySet current_;
    TGateMode mode_;
    Rng &rng_;
    std::vector<LedgerEntry> entries_;
};

struct LedgerRun {
    KeySet initial;
    std::vector<LedgerEntry> entries;
    KeySet final_keys;
};

/// Propagates keys through a circuit over Clifford, T and Tdg gates.
/// Three-qubit gates must be decomposed first.
LedgerRun run_ledger(const Circuit &circuit, const KeySet &initial, TGateMode mode, Rng &rng);

/// Table layout: one column per step, one row per qubit, first column is the initial key.
std::string ledger_csv(const LedgerRun &run);

}  // namespace qhekm

#endif
