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

#ifndef QHEKM_TESTS_ORACLES_H
#define QHEKM_TESTS_ORACLES_H

// Reference constructions kept apart from the library: dense unitaries built
// from textbook gate definitions by index arithmetic, Pauli frames, and small
// random-circuit generators.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "qhekm/qotp.h"
#include "qhekm/statevector.h"

namespace oracle {

using C = std::complex<double>;

struct Mat {
    std::size_t dim = 0;
    std::vector<C> v;
    explicit Mat(std::size_t d = 0) : dim(d), v(d * d) {}
    C &operator()(std::size_t r, std::size_t c) { return v[r * dim + c]; }
    C operator()(std::size_t r, std::size_t c) const { return v[r * dim + c]; }
};

inline Mat eye(std::size_t d) {
    Mat m(d);
    for (std::size_t i = 0; i < d; i++) {
        m(i, i) = 1;
    }
    return m;
}

inline Mat mul(const Mat &a, const Mat &b) {
    Mat out(a.dim);
    for (std::size_t i = 0; i < a.dim; i++) {
        for (std::size_t k = 0; k < a.dim; k++) {
            if (a(i, k) == C{}) {
                continue;
            }
            for (std::size_t j = 0; j < a.dim; j++) {
                out(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return out;
}

inline Mat dagger(const Mat &a) {
    Mat out(a.dim);
    for (std::size_t i = 0; i < a.dim; i++) {
        for (std::size_t j = 0; j < a.dim; j++) {
            out(i, j) = std::conj(a(j, i));
        }
    }
    return out;
}

/// max |a - e^{i phi} b| with phi chosen from the largest entry of b.
inline double phase_distance(const Mat &a, const Mat &b) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < b.v.size(); i++) {
        if (std::abs(b.v[i]) > std::abs(b.v[best])) {
            best = i;
        }
    }
    C phase = std::abs(b.v[best]) > 0 ? a.v[best] / b.v[best] : C{1};
    phase /= std::abs(phase) > 0 ? std::abs(phase) : 1.0;
    double d = 0;
    for (std::size_t i = 0; i < a.v.size(); i++) {
        d = std::max(d, std::abs(a.v[i] - phase * b.v[i]));
    }
    return d;
}

inline double exact_distance(const Mat &a, const Mat &b) {
    double d = 0;
    for (std::size_t i = 0; i < a.v.size(); i++) {
        d = std::max(d, std::abs(a.v[i] - b.v[i]));
    }
    return d;
}

inline int bit(std::size_t index, int q, int n) { return static_cast<int>((index >> (n - 1 - q)) & 1); }
inline std::size_t flip(std::size_t index, int q, int n) { return index ^ (std::size_t{1} << (n - 1 - q)); }

/// 2x2 matrix of a single-qubit gate, straight from the definitions.
inline std::array<C, 4> single(qhekm::GateKind k, double angle = 0) {
    using qhekm::GateKind;
    const double r = 1 / std::sqrt(2.0);
    const C i{0, 1};
    switch (k) {
        case GateKind::I:
            return {1, 0, 0, 1};
        case GateKind::X:
            return {0, 1, 1, 0};
        case GateKind::Y:
            return {0, -i, i, 0};
        case GateKind::Z:
            return {1, 0, 0, -1};
        case GateKind::H:
            return {r, r, r, -r};
        case GateKind::S:
            return {1, 0, 0, i};
        case GateKind::Sdg:
            return {1, 0, 0, -i};
        case GateKind::T:
            return {1, 0, 0, std::exp(i * (M_PI / 4))};
        case GateKind::Tdg:
            return {1, 0, 0, std::exp(-i * (M_PI / 4))};
        case GateKind::RY:
        case GateKind::CRY:
            return {std::cos(angle / 2), -std::sin(angle / 2), std::sin(angle / 2), std::cos(angle / 2)};
        default:
            throw std::logic_error("not single-qubit");
    }
}

/// Applies u to qubit `target` whenever every control qubit is 1.
inline Mat controlled(const std::array<C, 4> &u, const std::vector<int> &controls, int target, int n) {
    std::size_t d = std::size_t{1} << n;
    Mat m(d);
    for (std::size_t col = 0; col < d; col++) {
        bool on = true;
        for (int c : controls) {
            on = on && bit(col, c, n);
        }
        if (!on) {
            m(col, col) = 1;
            continue;
        }
        int b = bit(col, target, n);
        std::size_t zero = b ? flip(col, target, n) : col;
        std::size_t one = b ? col : flip(col, target, n);
        m(zero, col) = u[0 * 2 + b];
        m(one, col) = u[1 * 2 + b];
    }
    return m;
}

inline Mat swap_matrix(int p, int q, int n, std::vector<int> controls = {}) {
    std::size_t d = std::size_t{1} << n;
    Mat m(d);
    for (std::size_t col = 0; col < d; col++) {
        bool on = true;
        for (int c : controls) {
            on = on && bit(col, c, n);
        }
        std::size_t row = col;
        if (on && bit(col, p, n) != bit(col, q, n)) {
            row = flip(flip(col, p, n), q, n);
        }
        m(row, col) = 1;
    }
    return m;
}

inline Mat op_matrix(const qhekm::GateOp &op, int n) {
    using qhekm::GateKind;
    const auto &t = op.targets;
    switch (op.kind) {
        case GateKind::CNOT:
            return controlled(single(GateKind::X), {t[0]}, t[1], n);
        case GateKind::CZ:
            return controlled(single(GateKind::Z), {t[0]}, t[1], n);
        case GateKind::TOFFOLI:
            return controlled(single(GateKind::X), {t[0], t[1]}, t[2], n);
        case GateKind::SWAP:
            return swap_matrix(t[0], t[1], n);
        case GateKind::CSWAP:
            return swap_matrix(t[1], t[2], n, {t[0]});
        case GateKind::CRY:
            return controlled(single(GateKind::RY, op.angle), std::vector<int>(t.begin(), t.end() - 1), t.back(), n);
        default:
            return controlled(single(op.kind, op.angle), {}, t[0], n);
    }
}

inline Mat circuit_matrix(const qhekm::Circuit &c) {
    Mat m = eye(std::size_t{1} << c.qubit_count);
    for (const auto &op : c.ops) {
        m = mul(op_matrix(op, c.qubit_count), m);
    }
    return m;
}

inline std::vector<C> apply(const Mat &m, const std::vector<C> &x) {
    std::vector<C> out(m.dim);
    for (std::size_t i = 0; i < m.dim; i++) {
        for (std::size_t j = 0; j < m.dim; j++) {
            out[i] += m(i, j) * x[j];
        }
    }
    return out;
}

/// X^a Z^b on every qubit.
inline Mat pauli_frame(const qhekm::KeySet &keys) {
    int n = keys.size();
    Mat m = eye(std::size_t{1} << n);
    for (int q = 0; q < n; q++) {
        if (keys[q].b) {
            m = mul(controlled(single(qhekm::GateKind::Z), {}, q, n), m);
        }
        if (keys[q].a) {
            m = mul(controlled(single(qhekm::GateKind::X), {}, q, n), m);
        }
    }
    return m;
}

inline std::vector<C> random_amplitudes(int n, qhekm::Rng &rng) {
    std::normal_distribution<double> g;
    std::vector<C> v(std::size_t{1} << n);
    double norm = 0;
    for (auto &x : v) {
        x = {g(rng), g(rng)};
        norm += std::norm(x);
    }
    for (auto &x : v) {
        x /= std::sqrt(norm);
    }
    return v;
}

inline qhekm::PureState random_state(int n, qhekm::Rng &rng) { return qhekm::PureState(n, random_amplitudes(n, rng)); }

inline double overlap_sq(const std::vector<C> &a, const std::vector<C> &b) {
    C s{};
    for (std::size_t i = 0; i < a.size(); i++) {
        s += std::conj(a[i]) * b[i];
    }
    return std::norm(s);
}

/// Random circuit over the given single- and two-qubit kinds.
inline qhekm::Circuit random_circuit(int n, int gates, const std::vector<qhekm::GateKind> &kinds, qhekm::Rng &rng) {
    qhekm::Circuit c(n);
    std::uniform_int_distribution<std::size_t> pick(0, kinds.size() - 1);
    std::uniform_int_distribution<int> qubit(0, n - 1);
    for (int g = 0; g < gates; g++) {
        qhekm::GateKind k = kinds[pick(rng)];
        if (qhekm::gate_arity(k) == 2) {
            if (n < 2) {
                continue;
            }
            int a = qubit(rng), b = qubit(rng);
            while (b == a) {
                b = qubit(rng);
            }
            c.add(k, {a, b});
        } else {
            c.add(k, {qubit(rng)});
        }
    }
    return c;
}

inline const std::vector<qhekm::GateKind> &clifford_kinds() {
    using qhekm::GateKind;
    static const std::vector<GateKind> k{GateKind::I,   GateKind::X,    GateKind::Y,  GateKind::Z,
                                         GateKind::H,   GateKind::S,    GateKind::Sdg, GateKind::CNOT,
                                         GateKind::CZ,  GateKind::SWAP};
    return k;
}

inline const std::vector<qhekm::GateKind> &clifford_t_kinds() {
    using qhekm::GateKind;
    static const std::vector<GateKind> k{GateKind::X,  GateKind::Y,    GateKind::Z,  GateKind::H,    GateKind::S,
                                         GateKind::Sdg, GateKind::T,   GateKind::Tdg, GateKind::CNOT, GateKind::CZ,
                                         GateKind::SWAP, GateKind::T,  GateKind::H};
    return k;
}

/// Binomial half-width: k standard deviations for `shots` trials at probability p.
inline double sigma(double shots, double p) { return std::sqrt(shots * p * (1 - p)); }

}  // namespace oracle

#endif
