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

#include "qhekm/groveropt.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace qhekm {

void ValueTable::validate() const {
    if (index_bits < 1 || index_bits > 20) {
        throw InputError("value table index_bits must lie in [1, 20]");
    }
    if (values.size() != size()) {
        throw InputError("value table has " + std::to_string(values.size()) + " entries, expected " +
                         std::to_string(size()));
    }
    for (const auto &[bits, v] : values) {
        validate_bits(bits);
        if (static_cast<int>(bits.size()) != index_bits) {
            throw InputError("value table index '" + bits + "' has the wrong length");
        }
        if (v < 0 || v > max_value) {
            throw InputError("value table entry f(" + bits + ") = " + std::to_string(v) + " outside [0, " +
                             std::to_string(max_value) + "]");
        }
    }
}

std::int64_t ValueTable::at(const std::string &bits) const {
    auto it = values.find(bits);
    if (it == values.end()) {
        throw InputError("index '" + bits + "' not in value table");
    }
    return it->second;
}

ValueTable ValueTable::reference_example() {
    ValueTable t;
    t.index_bits = 3;
    t.max_value = 7;
    for (std::uint64_t i = 0; i < 8; i++) {
        t.values[index_to_bits(i, 3)] = 7;
    }
    t.values["000"] = 1;
    t.values["001"] = 3;
    t.values["111"] = 2;
    return t;
}

MarkedSet marked_set(const ValueTable &table, std::int64_t threshold) {
    MarkedSet out;
    for (const auto &[bits, v] : table.values) {
        if (v < threshold) {
            out.insert(bits);
        }
    }
    return out;
}

int grover_ancillas(int m) {
    return m >= 4 ? m - 2 : 0;
}

namespace {

void check_marked(const MarkedSet &marked, int m) {
    if (m < 1 || m + grover_ancillas(m) > max_qubits()) {
        throw InputError("index register size " + std::to_string(m) + " unsupported");
    }
    for (const auto &bits : marked) {
        validate_bits(bits);
        if (static_cast<int>(bits.size()) != m) {
            throw InputError("marked string '" + bits + "' is not " + std::to_string(m) + " bits long");
        }
    }
}

// CCZ as the phase-polynomial core of the standard Toffoli network: the two
// Hadamards on the target are dropped.
void append_ccz(Circuit &c, int q0, int q1, int q2) {
    for (auto &op : decompose(GateOp{GateKind::TOFFOLI, {q0, q1, q2}})) {
        if (op.kind != GateKind::H) {
            c.ops.push_back(std::move(op));
        }
    }
}

void append_toffoli(Circuit &c, int q0, int q1, int q2) {
    for (auto &op : decompose(GateOp{GateKind::TOFFOLI, {q0, q1, q2}})) {
        c.ops.push_back(std::move(op));
    }
}

// Multiplies the amplitude by -1 when every listed qubit is 1. Work qubits
// start and end in |0>.
void append_phase_monomial(Circuit &c, const std::vector<int> &qubits, int first_work) {
    switch (qubits.size()) {
        case 0:
            // XZXZ = -I
            c.add(GateKind::X, {0}).add(GateKind::Z, {0}).add(GateKind::X, {0}).add(GateKind::Z, {0});
            return;
        case 1:
            c.add(GateKind::Z, {qubits[0]});
            return;
        case 2:
            c.add(GateKind::CZ, {qubits[0], qubits[1]});
            return;
        case 3:
            append_ccz(c, qubits[0], qubits[1], qubits[2]);
            return;
        default:
            break;
    }
    int d = static_cast<int>(qubits.size());
    // work[j] accumulates the AND of qubits[0..j+1].
    std::vector<std::array<int, 3>> ladder;
    ladder.push_back({qubits[0], qubits[1], first_work});
    for (int j = 1; j <= d - 3; j++) {
        ladder.push_back({first_work + j - 1, qubits[j + 1], first_work + j});
    }
    for (const auto &t : ladder) {
        append_toffoli(c, t[0], t[1], t[2]);
    }
    c.add(GateKind::CZ, {first_work + d - 3, qubits[d - 1]});
    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
        append_toffoli(c, (*it)[0], (*it)[1], (*it)[2]);
    }
}

}  // namespace

Circuit build_phase_oracle(const MarkedSet &marked, int m) {
    check_marked(marked, m);
    if (marked.empty()) {
        throw InputError("phase oracle needs at least one marked string");
    }
    // Algebraic normal form of the indicator: phase = prod over monomials of (-1)^monomial.
    // Subsets are masks over qubits, bit q <-> qubit q.
    std::size_t n = std::size_t{1} << m;
    std::vector<std::uint8_t> coef(n, 0);
    for (const auto &bits : marked) {
        std::size_t mask = 0;
        for (int q = 0; q < m; q++) {
            if (bits[q] == '1') {
                mask |= std::size_t{1} << q;
            }
        }
        coef[mask] = 1;
    }
    for (int q = 0; q < m; q++) {
        std::size_t bit = std::size_t{1} << q;
        for (std::size_t mask = 0; mask < n; mask++) {
            if (mask & bit) {
                coef[mask] ^= coef[mask ^ bit];
            }
        }
    }
    Circuit out(m + grover_ancillas(m));
    for (std::size_t mask = 0; mask < n; mask++) {
        if (!coef[mask]) {
            continue;
        }
        std::vector<int> qubits;
        for (int q = 0; q < m; q++) {
            if (mask & (std::size_t{1} << q)) {
                qubits.push_back(q);
            }
        }
        append_phase_monomial(out, qubits, m);
    }
    return out;
}

Circuit build_diffusion(int m) {
    check_marked({}, m);
    Circuit out(m + grover_ancillas(m));
    std::vector<int> all(static_cast<std::size_t>(m));
    std::iota(all.begin(), all.end(), 0);
    for (int q : all) {
        out.add(GateKind::H, {q});
    }
    for (int q : all) {
        out.add(GateKind::X, {q});
    }
    append_phase_monomial(out, all, m);
    for (int q : all) {
        out.add(GateKind::X, {q});
    }
    for (int q : all) {
        out.add(GateKind::H, {q});
    }
    return out;
}

Circuit grover_eval_circuit(const MarkedSet &marked, int m, int iterations) {
    if (iterations < 0) {
        throw InputError("iteration count must be non-negative");
    }
    Circuit oracle = build_phase_oracle(marked, m);
    Circuit diffusion = build_diffusion(m);
    Circuit out(oracle.qubit_count);
    for (int i = 0; i < iterations; i++) {
        out.append(oracle);
        out.append(diffusion);
    }
    return out;
}

Circuit grover_prep(int m) {
    check_marked({}, m);
    Circuit out(m + grover_ancillas(m));
    for (int q = 0; q < m; q++) {
        out.add(GateKind::H, {q});
    }
    return out;
}

namespace {

void check_search(const MarkedSet &marked, int m) {
    check_marked(marked, m);
    if (marked.empty() || marked.size() >= (std::size_t{1} << m)) {
        throw InputError("Grover search needs 1 <= |marked| < 2^m, got " + std::to_string(marked.size()));
    }
}

std::vector<int> index_qubits(int m) {
    std::vector<int> out(static_cast<std::size_t>(m));
    std::iota(out.begin(), out.end(), 0);
    return out;
}

PureState grover_output(const MarkedSet &marked, int m, int iterations) {
    check_search(marked, m);
    Circuit full = grover_prep(m);
    full.append(grover_eval_circuit(marked, m, iterations));
    return run_circuit(PureState(full.qubit_count), full);
}

}  // namespace

std::map<std::string, double> grover_distribution(const MarkedSet &marked, int m, int iterations) {
    return outcome_distribution(grover_output(marked, m, iterations), index_qubits(m));
}

double grover_marked_probability(const MarkedSet &marked, int m, int iterations) {
    double p = 0;
    for (const auto &[bits, prob] : grover_distribution(marked, m, iterations)) {
        if (marked.contains(bits)) {
            p += prob;
        }
    }
    return p;
}

ShotHistogram grover_search(const MarkedSet &marked, int m, int iterations, std::uint64_t shots, Rng &rng) {
    return sample_shots(grover_output(marked, m, iterations), shots, rng, index_qubits(m));
}

int optimal_iterations(std::uint64_t n, std::uint64_t m) {
    if (m < 1 || m >= n) {
        throw InputError("optimal_iterations needs 1 <= M < N");
    }
    double theta = std::asin(std::sqrt(static_cast<double>(m) / static_cast<double>(n)));
    return static_cast<int>(std::floor(std::numbers::pi / (4 * theta)));
}

MinResult durr_hoyer_min(const ValueTable &table, const MinFindOptions &options, Rng &rng) {
    table.validate();
    if (options.shots_per_round < 1) {
        throw InputError("shots_per_round must be positive");
    }
    int m = table.index_bits;
    std::uint64_t n = table.size();
    int sqrt_n = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    int budget = options.budget_rounds > 0 ? options.budget_rounds : sqrt_n;
    SearchBackend search = options.search ? options.search : SearchBackend(grover_search);

    std::string a;
    if (options.start) {
        a = *options.start;
        table.at(a);
    } else {
        std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
        a = index_to_bits(pick(rng), m);
    }
    std::int64_t b = table.at(a);

    MinResult result;
    for (int round = 0; round < budget; round++) {
        auto marked = marked_set(table, b);
        if (marked.empty()) {
            break;
        }
        int iterations;
        if (options.randomized_iterations) {
            std::uniform_int_distribution<int> pick(0, sqrt_n - 1);
            iterations = pick(rng);
        } else {
            iterations = optimal_iterations(n, marked.size());
        }
        auto hist = search(marked, m, iterations, options.shots_per_round, rng);
        if (hist.counts.empty()) {
            throw InputError("search backend returned an empty histogram");
        }
        // Lowest-valued measured index; ties go to the lexicographically smallest.
        std::string best;
        std::int64_t best_value = 0;
        for (const auto &[bits, count] : hist.counts) {
            std::int64_t v = table.at(bits);
            if (best.empty() || v < best_value) {
                best = bits;
                best_value = v;
            }
        }
        result.trace.push_back({b, marked.size(), iterations, best, best_value});
        result.iterations_used++;
        if (best_value < b) {
            a = best;
            b = best_value;
        }
    }
    result.a_min = a;
    result.b_min = b;
    return result;
}

MinResult durr_hoyer_min(const ValueTable &table, int budget_rounds, std::uint64_t shots_per_round, Rng &rng) {
    MinFindOptions options;
    options.budget_rounds = budget_rounds;
    options.shots_per_round = shots_per_round;
    return durr_hoyer_min(table, options, rng);
}

EncryptedGroverResult encrypted_grover(const MarkedSet &marked, int m, int iterations, const KeySet &initial_keys,
                                       std::uint64_t shots, TGateMode mode, Rng &rng) {
    check_search(marked, m);
    if (initial_keys.size() != m) {
        throw InputError("encrypted Grover needs one key pair per index qubit (" + std::to_string(m) + "), got " +
                         std::to_string(initial_keys.size()));
    }
    KeySet keys = initial_keys;
    keys.pairs.resize(static_cast<std::size_t>(m + grover_ancillas(m)));
    DelegationOptions options{shots, mode, 0.0};
    auto session = run_delegated(grover_prep(m), grover_eval_circuit(marked, m, iterations), keys, options, rng);
    auto idx = index_qubits(m);
    EncryptedGroverResult out;
    out.ciphertext = session.ciphertext.marginal(idx);
    out.decrypted = session.decrypted.marginal(idx);
    out.final_keys = session.final_keys;
    out.session = std::move(session);
    return out;
}

EncryptedGroverResult encrypted_grover(const MarkedSet &marked, int m, const KeySet &initial_keys,
                                       std::uint64_t shots, TGateMode mode, Rng &rng) {
    check_search(marked, m);
    return encrypted_grover(marked, m, optimal_iterations(std::uint64_t{1} << m, marked.size()), initial_keys, shots,
                            mode, rng);
}

}  // namespace qhekm
