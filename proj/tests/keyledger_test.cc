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

#include <gtest/gtest.h>

#include "oracles.h"
#include "qhekm/errors.h"
#include "qhekm/groveropt.h"
#include "qhekm/qotp.h"

using namespace qhekm;

namespace {

std::vector<KeySet> all_keysets(int n) {
    std::vector<KeySet> out;
    for (int bits = 0; bits < (1 << (2 * n)); bits++) {
        KeySet k = KeySet::zeros(n);
        for (int q = 0; q < n; q++) {
            k[q] = {static_cast<std::uint8_t>((bits >> (2 * q)) & 1), static_cast<std::uint8_t>((bits >> (2 * q + 1)) & 1)};
        }
        out.push_back(k);
    }
    return out;
}

/// True iff G P(before) G^dag = phase * P(after), checked with reference matrices.
bool conjugation_holds(const GateOp &op, const KeySet &before, const KeySet &after) {
    Circuit c(before.size());
    c.ops.push_back(op);
    auto g = oracle::circuit_matrix(c);
    auto lhs = oracle::mul(oracle::mul(g, oracle::pauli_frame(before)), oracle::dagger(g));
    return oracle::phase_distance(lhs, oracle::pauli_frame(after)) < 1e-9;
}

std::vector<GateOp> clifford_ops() {
    std::vector<GateOp> ops;
    for (auto k : {GateKind::I, GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::S, GateKind::Sdg}) {
        ops.push_back({k, {0}});
        ops.push_back({k, {1}});
    }
    for (auto k : {GateKind::CNOT, GateKind::CZ, GateKind::SWAP}) {
        ops.push_back({k, {0, 1}});
        ops.push_back({k, {1, 0}});
    }
    return ops;
}

Circuit reference_grover_circuit() { return grover_eval_circuit({"000", "111"}, 3, 1); }

}  // namespace

TEST(CliffordUpdate, Examples) {
    EXPECT_EQ(clifford_update(parse_keyset("{1,0}"), {GateKind::H, {0}}), parse_keyset("{0,1}"));
    EXPECT_EQ(clifford_update(parse_keyset("{1,1},{1,0}"), {GateKind::CZ, {0, 1}}), parse_keyset("{1,0},{1,1}"));
    EXPECT_EQ(clifford_update(parse_keyset("{1,0},{0,0}"), {GateKind::CNOT, {0, 1}}), parse_keyset("{1,0},{1,0}"));
    EXPECT_EQ(clifford_update(parse_keyset("{0,0},{0,1}"), {GateKind::CNOT, {0, 1}}), parse_keyset("{0,1},{0,1}"));
    EXPECT_EQ(clifford_update(parse_keyset("{1,0},{0,1}"), {GateKind::SWAP, {0, 1}}), parse_keyset("{0,1},{1,0}"));
    EXPECT_THROW(clifford_update(parse_keyset("{1,0}"), {GateKind::T, {0}}), InputError);
    EXPECT_THROW(clifford_update(parse_keyset("{1,0}"), {GateKind::CNOT, {0, 1}}), InputError);
}

TEST(DeriveRule, Examples) {
    EXPECT_EQ(derive_rule({GateKind::S, {0}}, parse_keyset("{1,0}")), parse_keyset("{1,1}"));
    for (const auto &k : all_keysets(1)) {
        EXPECT_EQ(derive_rule({GateKind::Z, {0}}, k), k);
    }
    EXPECT_EQ(derive_rule({GateKind::CZ, {0, 1}}, parse_keyset("{0,1},{1,0}")), parse_keyset("{0,0},{1,0}"));
    EXPECT_THROW(derive_rule({GateKind::T, {0}}, parse_keyset("{1,0}")), InputError);
    EXPECT_THROW(derive_rule({GateKind::TOFFOLI, {0, 1, 2}}, KeySet::zeros(3)), InputError);
}

TEST(CliffordUpdate, AgreesWithDeriveRuleExhaustively) {
    int mismatches = 0;
    for (const auto &op : clifford_ops()) {
        for (const auto &k : all_keysets(2)) {
            mismatches += clifford_update(k, op) != derive_rule(op, k);
        }
    }
    EXPECT_EQ(mismatches, 0);
}

TEST(CliffordUpdate, SatisfiesConjugationOracle) {
    for (const auto &op : clifford_ops()) {
        for (const auto &k : all_keysets(2)) {
            EXPECT_TRUE(conjugation_holds(op, k, clifford_update(k, op))) << op.str() << " " << k.str();
        }
    }
}

TEST(CliffordUpdate, NaiveCnotTargetRuleFailsConjugation) {
    // target b-bit picks up the control's a-bit: (a_m, a_m ^ b_l) instead of (a_m ^ a_l, b_l)
    int failures = 0;
    for (const auto &k : all_keysets(2)) {
        KeySet naive = k;
        naive[0].b = k[0].b ^ k[1].b;
        naive[1] = {k[0].a, static_cast<std::uint8_t>(k[0].a ^ k[1].b)};
        failures += !conjugation_holds({GateKind::CNOT, {0, 1}}, k, naive);
    }
    EXPECT_GT(failures, 0);
}

TEST(TUpdate, Examples) {
    Rng rng(1);
    auto alg = t_update(parse_keyset("{1,0}"), 0, TGateMode::algebraic, rng);
    EXPECT_EQ(alg.keys, parse_keyset("{1,1}"));
    EXPECT_EQ(alg.s_correction, 1);
    auto alg0 = t_update(parse_keyset("{0,1}"), 0, TGateMode::algebraic, rng);
    EXPECT_EQ(alg0.keys, parse_keyset("{0,1}"));
    EXPECT_EQ(alg0.s_correction, 0);
    Rng a(77), b(77);
    EXPECT_EQ(t_update(parse_keyset("{1,1},{0,0}"), 1, TGateMode::trusted_fresh_key, a).keys,
              t_update(parse_keyset("{1,1},{0,0}"), 1, TGateMode::trusted_fresh_key, b).keys);
    auto same = t_update(parse_keyset("{1,0},{0,1}"), 1, TGateMode::trusted_same_key, rng);
    EXPECT_EQ(same.keys, parse_keyset("{1,0},{0,1}"));
    EXPECT_EQ(same.s_correction, 0);
    EXPECT_THROW(t_update(parse_keyset("{1,0}"), 1, TGateMode::algebraic, rng), InputError);
}

TEST(TUpdate, FreshKeysOnlyTouchTheTargetQubit) {
    Rng rng(5);
    std::set<std::string> seen;
    for (int i = 0; i < 200; i++) {
        auto u = t_update(parse_keyset("{1,1},{0,0},{1,0}"), 1, TGateMode::trusted_fresh_key, rng);
        EXPECT_EQ(u.keys[0], (KeyBitPair{1, 1}));
        EXPECT_EQ(u.keys[2], (KeyBitPair{1, 0}));
        seen.insert(u.keys.str());
    }
    EXPECT_EQ(seen.size(), 4u);
}

TEST(TUpdate, AlgebraicIdentityOnRandomStates) {
    Rng rng(12);
    for (auto gate : {GateKind::T, GateKind::Tdg}) {
        GateKind correction = gate == GateKind::T ? GateKind::S : GateKind::Sdg;
        for (const auto &k : all_keysets(1)) {
            for (int trial = 0; trial < 10; trial++) {
                PureState plain = oracle::random_state(1, rng);
                PureState cipher = apply_op(encrypt(plain, k), {gate, {0}});
                auto update = t_update(k, 0, TGateMode::algebraic, rng);
                if (update.s_correction) {
                    cipher = apply_op(cipher, {correction, {0}});
                }
                PureState expected = encrypt(apply_op(plain, {gate, {0}}), update.keys);
                EXPECT_NEAR(overlap_sq(cipher, expected), 1.0, 1e-12) << k.str();
            }
        }
    }
}

TEST(RunLedger, Examples) {
    Rng rng(0);
    KeySet initial = parse_keyset("{1,1},{0,1},{0,1}");
    auto empty = run_ledger(Circuit(3), initial, TGateMode::trusted_fresh_key, rng);
    EXPECT_EQ(empty.final_keys, initial);
    EXPECT_TRUE(empty.entries.empty());

    auto fig = run_ledger(reference_grover_circuit(), initial, TGateMode::trusted_same_key, rng);
    EXPECT_EQ(fig.final_keys.a_bits(), "100");
    EXPECT_EQ(fig.final_keys, parse_keyset("{1,1},{0,0},{0,0}"));
    EXPECT_EQ(fig.entries.size(), reference_grover_circuit().ops.size());

    auto alg = run_ledger(reference_grover_circuit(), initial, TGateMode::algebraic, rng);
    EXPECT_EQ(alg.final_keys.a_bits(), "100");

    Circuit toffoli(3);
    toffoli.add(GateKind::TOFFOLI, {0, 1, 2});
    EXPECT_THROW(run_ledger(toffoli, initial, TGateMode::trusted_same_key, rng), InputError);
    EXPECT_THROW(run_ledger(Circuit(2), initial, TGateMode::trusted_same_key, rng), InputError);
}

TEST(RunLedger, OnlyAlgebraicModeFlagsCorrections) {
    Rng rng(3);
    KeySet initial = parse_keyset("{1,1},{0,1},{0,1}");
    for (auto mode : {TGateMode::trusted_fresh_key, TGateMode::trusted_same_key, TGateMode::algebraic}) {
        auto run = run_ledger(reference_grover_circuit(), initial, mode, rng);
        int flags = 0;
        for (const auto &e : run.entries) {
            ASSERT_EQ(e.keys_after.size(), 3);
            for (auto f : e.s_correction_flags) {
                flags += f;
            }
            if (!is_t_type(e.gate.kind)) {
                EXPECT_EQ(std::count(e.s_correction_flags.begin(), e.s_correction_flags.end(), 1), 0);
            }
        }
        if (mode != TGateMode::algebraic) {
            EXPECT_EQ(flags, 0);
        }
    }
}

TEST(RunLedger, CliffordHomomorphismOnRandomCircuits) {
    Rng rng(2024);
    std::uniform_int_distribution<int> width(1, 4), length(0, 30);
    for (int trial = 0; trial < 500; trial++) {
        int n = width(rng);
        Circuit c = oracle::random_circuit(n, length(rng), oracle::clifford_kinds(), rng);
        PureState plain = oracle::random_state(n, rng);
        KeySet k = random_keyset(n, rng);
        auto run = run_ledger(c, k, TGateMode::trusted_fresh_key, rng);
        PureState out = decrypt(run_circuit(encrypt(plain, k), c), run.final_keys);
        ASSERT_NEAR(overlap_sq(out, run_circuit(plain, c)), 1.0, 1e-9) << "trial " << trial;
    }
}

TEST(RunLedger, MeasurementXorLaw) {
    Rng rng(31);
    for (int trial = 0; trial < 100; trial++) {
        int n = 1 + trial % 4;
        Circuit c = oracle::random_circuit(n, 20, oracle::clifford_kinds(), rng);
        PureState plain = oracle::random_state(n, rng);
        KeySet k = random_keyset(n, rng);
        auto run = run_ledger(c, k, TGateMode::trusted_same_key, rng);
        auto cipher = run_circuit(encrypt(plain, k), c).probabilities();
        auto clear = run_circuit(plain, c).probabilities();
        std::uint64_t mask = bits_to_index(run.final_keys.a_bits());
        for (std::size_t i = 0; i < clear.size(); i++) {
            ASSERT_NEAR(cipher[i ^ mask], clear[i], 1e-12);
        }
    }
}

TEST(KeyLedger, IncrementalMatchesBatch) {
    Rng a(4), b(4);
    KeySet initial = parse_keyset("{1,0},{0,1},{1,1}");
    auto batch = run_ledger(reference_grover_circuit(), initial, TGateMode::trusted_fresh_key, a);
    KeyLedger ledger(initial, TGateMode::trusted_fresh_key, b);
    for (const auto &op : reference_grover_circuit().ops) {
        ledger.apply(op);
    }
    EXPECT_EQ(ledger.current(), batch.final_keys);
    EXPECT_EQ(ledger.entries().back().step, static_cast<int>(batch.entries.size()));
}

TEST(LedgerCsv, OneRowPerQubitOneColumnPerStep) {
    Rng rng(0);
    Circuit c(2);
    c.add(GateKind::H, {0}).add(GateKind::CZ, {0, 1});
    auto run = run_ledger(c, parse_keyset("{1,0},{0,1}"), TGateMode::trusted_same_key, rng);
    EXPECT_EQ(ledger_csv(run),
              "step,0,1,2\n"
              "gate,initial,\"H(0)\",\"CZ(0,1)\"\n"
              "q0,\"{1,0}\",\"{0,1}\",\"{0,1}\"\n"
              "q1,\"{0,1}\",\"{0,1}\",\"{0,1}\"\n");
}

TEST(TGateMode, NamesRoundTrip) {
    for (auto mode : {TGateMode::trusted_fresh_key, TGateMode::trusted_same_key, TGateMode::algebraic}) {
        EXPECT_EQ(parse_t_mode(t_mode_name(mode)), mode);
    }
    EXPECT_THROW(parse_t_mode("sometimes"), InputError);
}
