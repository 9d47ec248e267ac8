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

#include "qhekm/statevector.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

namespace qhekm {

namespace {

constexpr double kNormTolerance = 1e-10;

struct GateInfo {
    GateKind kind;
    std::string_view name;
    int arity;
};

constexpr std::array<GateInfo, 16> kGates{{
    {GateKind::I, "I", 1},
    {GateKind::X, "X", 1},
    {GateKind::Y, "Y", 1},
    {GateKind::Z, "Z", 1},
    {GateKind::H, "H", 1},
    {GateKind::S, "S", 1},
    {GateKind::Sdg, "Sdg", 1},
    {GateKind::T, "T", 1},
    {GateKind::Tdg, "Tdg", 1},
    {GateKind::CNOT, "CNOT", 2},
    {GateKind::CZ, "CZ", 2},
    {GateKind::SWAP, "SWAP", 2},
    {GateKind::CSWAP, "CSWAP", 3},
    {GateKind::TOFFOLI, "TOFFOLI", 3},
    {GateKind::RY, "RY", 1},
    {GateKind::CRY, "CRY", 0},
}};

const GateInfo &info(GateKind kind) {
    for (const auto &g : kGates) {
        if (g.kind == kind) {
            return g;
        }
    }
    throw InputError("unknown gate kind");
}

// Fills m (row-major 2x2) with the single-qubit matrix of the kind.
void single_qubit_matrix(GateKind kind, double angle, Complex m[4]) {
    using namespace std::complex_literals;
    const Complex t_phase = std::polar(1.0, std::numbers::pi / 4);
    const double r = 1.0 / std::numbers::sqrt2;
    switch (kind) {
        case GateKind::I:
            m[0] = 1, m[1] = 0, m[2] = 0, m[3] = 1;
            return;
        case GateKind::X:
            m[0] = 0, m[1] = 1, m[2] = 1, m[3] = 0;
            return;
        case GateKind::Y:
            m[0] = 0, m[1] = -1i, m[2] = 1i, m[3] = 0;
            return;
        case GateKind::Z:
            m[0] = 1, m[1] = 0, m[2] = 0, m[3] = -1;
            return;
        case GateKind::H:
            m[0] = r, m[1] = r, m[2] = r, m[3] = -r;
            return;
        case GateKind::S:
            m[0] = 1, m[1] = 0, m[2] = 0, m[3] = 1i;
            return;
        case GateKind::Sdg:
            m[0] = 1, m[1] = 0, m[2] = 0, m[3] = -1i;
            return;
        case GateKind::T:
            m[0] = 1, m[1] = 0, m[2] = 0, m[3] = t_phase;
            return;
        case GateKind::Tdg:
            m[0] = 1, m[1] = 0, m[2] = 0, m[3] = std::conj(t_phase);
            return;
        case GateKind::RY:
        case GateKind::CRY: {
            double c = std::cos(angle / 2);
            double s = std::sin(angle / 2);
            m[0] = c, m[1] = -s, m[2] = s, m[3] = c;
            return;
        }
        default:
            throw InputError("not a single-qubit gate: " + std::string(gate_name(kind)));
    }
}

}  // namespace

int max_qubits() {
    if (const char *env = std::getenv("QHEKM_MAX_QUBITS")) {
        char *end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 30) {
            return static_cast<int>(v);
        }
    }
    return 20;
}

std::string_view gate_name(GateKind kind) {
    return info(kind).name;
}

GateKind parse_gate_name(std::string_view name) {
    for (const auto &g : kGates) {
        if (g.name == name) {
            return g.kind;
        }
    }
    throw InputError("unknown gate name '" + std::string(name) + "'");
}

int gate_arity(GateKind kind) {
    return info(kind).arity;
}

bool is_clifford(GateKind kind) {
    switch (kind) {
        case GateKind::I:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
            return true;
        default:
            return false;
    }
}

bool is_t_type(GateKind kind) {
    return kind == GateKind::T || kind == GateKind::Tdg;
}

std::string GateOp::str() const {
    std::ostringstream out;
    out << gate_name(kind) << "(";
    for (std::size_t i = 0; i < targets.size(); i++) {
        out << (i ? "," : "") << targets[i];
    }
    out << ")";
    return out.str();
}

void validate_op(const GateOp &op, int qubit_count) {
    int arity = gate_arity(op.kind);
    int n = static_cast<int>(op.targets.size());
    if (op.kind == GateKind::CRY ? n < 2 : n != arity) {
        throw InputError(op.str() + ": wrong number of qubits for " + std::string(gate_name(op.kind)));
    }
    std::set<int> seen;
    for (int q : op.targets) {
        if (q < 0 || q >= qubit_count) {
            throw InputError(op.str() + ": qubit index out of range for " + std::to_string(qubit_count) + " qubits");
        }
        if (!seen.insert(q).second) {
            throw InputError(op.str() + ": repeated qubit index");
        }
    }
    if (!std::isfinite(op.angle)) {
        throw InputError(op.str() + ": non-finite angle");
    }
}

Circuit &Circuit::add(GateKind kind, std::vector<int> targets, double angle) {
    ops.push_back(GateOp{kind, std::move(targets), angle});
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.qubit_count > qubit_count) {
        throw InputError("appended circuit is wider than the target circuit");
    }
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
    return *this;
}

Circuit &Circuit::append_mapped(const Circuit &other, std::span<const int> mapping) {
    if (static_cast<int>(mapping.size()) != other.qubit_count) {
        throw InputError("qubit mapping size does not match circuit width");
    }
    for (GateOp op : other.ops) {
        for (int &q : op.targets) {
            q = mapping[q];
        }
        ops.push_back(std::move(op));
    }
    return *this;
}

void Circuit::validate() const {
    if (qubit_count < 1 || qubit_count > max_qubits()) {
        throw InputError("circuit qubit count " + std::to_string(qubit_count) + " outside [1, " +
                         std::to_string(max_qubits()) + "]");
    }
    for (const auto &op : ops) {
        validate_op(op, qubit_count);
    }
}

std::size_t Circuit::count(GateKind kind) const {
    return static_cast<std::size_t>(std::count_if(ops.begin(), ops.end(), [&](const GateOp &op) { return op.kind == kind; }));
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; i++) {
        m(i, i) = 1;
    }
    return m;
}

CMatrix CMatrix::operator*(const CMatrix &rhs) const {
    if (dim_ != rhs.dim_) {
        throw InputError("matrix dimension mismatch");
    }
    CMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t k = 0; k < dim_; k++) {
            Complex v = (*this)(r, k);
            if (v == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < dim_; c++) {
                out(r, c) += v * rhs(k, c);
            }
        }
    }
    return out;
}

CMatrix CMatrix::adjoint() const {
    CMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; r++) {
        for (std::size_t c = 0; c < dim_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

CMatrix CMatrix::kron(const CMatrix &rhs) const {
    CMatrix out(dim_ * rhs.dim_);
    for (std::size_t r1 = 0; r1 < dim_; r1++) {
        for (std::size_t c1 = 0; c1 < dim_; c1++) {
            for (std::size_t r2 = 0; r2 < rhs.dim_; r2++) {
                for (std::size_t c2 = 0; c2 < rhs.dim_; c2++) {
                    out(r1 * rhs.dim_ + r2, c1 * rhs.dim_ + c2) = (*this)(r1, c1) * rhs(r2, c2);
                }
            }
        }
    }
    return out;
}

double CMatrix::max_abs_diff(const CMatrix &other) const {
    if (dim_ != other.dim_) {
        throw InputError("matrix dimension mismatch");
    }
    double worst = 0;
    for (std::size_t i = 0; i < data_.size(); i++) {
        worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
    }
    return worst;
}

double CMatrix::phase_aligned_diff(const CMatrix &other) const {
    if (dim_ != other.dim_) {
        throw InputError("matrix dimension mismatch");
    }
    Complex inner{};
    for (std::size_t i = 0; i < data_.size(); i++) {
        inner += std::conj(other.data_[i]) * data_[i];
    }
    Complex phase = std::abs(inner) > 0 ? inner / std::abs(inner) : Complex{1};
    double worst = 0;
    for (std::size_t i = 0; i < data_.size(); i++) {
        worst = std::max(worst, std::abs(data_[i] - phase * other.data_[i]));
    }
    return worst;
}

CMatrix gate_matrix(const GateOp &op) {
    int k = static_cast<int>(op.targets.size());
    Circuit local(k);
    GateOp relabeled = op;
    for (int i = 0; i < k; i++) {
        relabeled.targets[i] = i;
    }
    local.ops.push_back(relabeled);
    return circuit_unitary(local);
}

PureState::PureState(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1 || qubit_count > max_qubits()) {
        throw InputError("qubit count " + std::to_string(qubit_count) + " outside [1, " + std::to_string(max_qubits()) + "]");
    }
    amplitudes_.assign(std::size_t{1} << qubit_count, Complex{});
    amplitudes_[0] = 1;
}

PureState::PureState(int qubit_count, std::vector<Complex> amplitudes) : PureState(qubit_count) {
    if (amplitudes.size() != amplitudes_.size()) {
        throw InputError("amplitude vector has length " + std::to_string(amplitudes.size()) + ", expected " +
                         std::to_string(amplitudes_.size()));
    }
    amplitudes_ = std::move(amplitudes);
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
        throw InputError("amplitudes are not normalized");
    }
}

void PureState::apply_single(int qubit, const Complex m[4]) {
    std::size_t bit = std::size_t{1} << (qubit_count_ - 1 - qubit);
    for (std::size_t i = 0; i < amplitudes_.size(); i++) {
        if (i & bit) {
            continue;
        }
        Complex a0 = amplitudes_[i];
        Complex a1 = amplitudes_[i | bit];
        amplitudes_[i] = m[0] * a0 + m[1] * a1;
        amplitudes_[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void PureState::apply_controlled_single(std::span<const int> controls, int target, const Complex m[4]) {
    std::size_t mask = 0;
    for (int c : controls) {
        mask |= std::size_t{1} << (qubit_count_ - 1 - c);
    }
    std::size_t bit = std::size_t{1} << (qubit_count_ - 1 - target);
    for (std::size_t i = 0; i < amplitudes_.size(); i++) {
        if ((i & bit) || (i & mask) != mask) {
            continue;
        }
        Complex a0 = amplitudes_[i];
        Complex a1 = amplitudes_[i | bit];
        amplitudes_[i] = m[0] * a0 + m[1] * a1;
        amplitudes_[i | bit] = m[2] * a0 + m[3] * a1;
    }
}

void PureState::apply(const GateOp &op) {
    validate_op(op, qubit_count_);
    auto bit = [&](int q) { return std::size_t{1} << (qubit_count_ - 1 - q); };
    const auto &t = op.targets;
    switch (op.kind) {
        case GateKind::I:
            return;
        case GateKind::CNOT:
        case GateKind::TOFFOLI: {
            Complex x[4];
            single_qubit_matrix(GateKind::X, 0, x);
            apply_controlled_single(std::span(t).first(t.size() - 1), t.back(), x);
            return;
        }
        case GateKind::CZ: {
            std::size_t mask = bit(t[0]) | bit(t[1]);
            for (std::size_t i = 0; i < amplitudes_.size(); i++) {
                if ((i & mask) == mask) {
                    amplitudes_[i] = -amplitudes_[i];
                }
            }
            return;
        }
        case GateKind::SWAP:
        case GateKind::CSWAP: {
            std::size_t control = op.kind == GateKind::CSWAP ? bit(t[0]) : 0;
            std::size_t a = bit(t[t.size() - 2]);
            std::size_t b = bit(t.back());
            for (std::size_t i = 0; i < amplitudes_.size(); i++) {
                if ((i & control) == control && (i & a) && !(i & b)) {
                    std::swap(amplitudes_[i], amplitudes_[i ^ a ^ b]);
                }
            }
            return;
        }
        case GateKind::CRY: {
            Complex m[4];
            single_qubit_matrix(op.kind, op.angle, m);
            apply_controlled_single(std::span(t).first(t.size() - 1), t.back(), m);
            return;
        }
        default: {
            Complex m[4];
            single_qubit_matrix(op.kind, op.angle, m);
            apply_single(t[0], m);
            return;
        }
    }
}

void PureState::apply(const Circuit &circuit) {
    if (circuit.qubit_count != qubit_count_) {
        throw InputError("circuit has " + std::to_string(circuit.qubit_count) + " qubits, state has " +
                         std::to_string(qubit_count_));
    }
    for (const auto &op : circuit.ops) {
        apply(op);
    }
}

double PureState::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

std::vector<double> PureState::probabilities() const {
    std::vector<double> out(amplitudes_.size());
    std::transform(amplitudes_.begin(), amplitudes_.end(), out.begin(), [](const Complex &a) { return std::norm(a); });
    return out;
}

double ShotHistogram::frequency(const std::string &bits) const {
    if (shots == 0) {
        return 0;
    }
    auto it = counts.find(bits);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(shots);
}

ShotHistogram ShotHistogram::marginal(std::span<const int> positions) const {
    ShotHistogram out;
    out.shots = shots;
    for (const auto &[key, count] : counts) {
        std::string sub;
        for (int p : positions) {
            if (p < 0 || p >= static_cast<int>(key.size())) {
                throw InputError("marginal position out of range");
            }
            sub.push_back(key[p]);
        }
        out.counts[sub] += count;
    }
    return out;
}

void validate_bits(std::string_view bits) {
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InputError("bitstring '" + std::string(bits) + "' contains characters other than 0/1");
        }
    }
}

std::uint64_t bits_to_index(std::string_view bits) {
    validate_bits(bits);
    if (bits.size() > 63) {
        throw InputError("bitstring too long");
    }
    std::uint64_t index = 0;
    for (char c : bits) {
        index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    return index;
}

std::string index_to_bits(std::uint64_t index, int width) {
    std::string out(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; i++) {
        if ((index >> (width - 1 - i)) & 1) {
            out[i] = '1';
        }
    }
    return out;
}

PureState init_basis(int qubit_count, std::string_view bits) {
    if (static_cast<int>(bits.size()) != qubit_count) {
        throw InputError("bitstring length " + std::to_string(bits.size()) + " does not match qubit count " +
                         std::to_string(qubit_count));
    }
    PureState zero(qubit_count);
    std::vector<Complex> amps(zero.dim());
    amps[bits_to_index(bits)] = 1;
    return PureState(qubit_count, std::move(amps));
}

PureState apply_op(PureState state, const GateOp &op) {
    state.apply(op);
    return state;
}

PureState run_circuit(PureState state, const Circuit &circuit) {
    state.apply(circuit);
    return state;
}

namespace {

std::vector<int> all_or(std::span<const int> qubits, int n) {
    if (!qubits.empty()) {
        std::set<int> seen;
        for (int q : qubits) {
            if (q < 0 || q >= n) {
                throw InputError("measured qubit index out of range");
            }
            if (!seen.insert(q).second) {
                throw InputError("measured qubits must be distinct");
            }
        }
        return {qubits.begin(), qubits.end()};
    }
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; i++) {
        all[i] = i;
    }
    return all;
}

// Probability of each outcome of the measured qubits, indexed by the outcome's
// bits read in measured order.
std::vector<double> marginal_probabilities(const PureState &state, std::span<const int> measured) {
    int n = state.qubit_count();
    std::size_t k = measured.size();
    std::vector<double> out(std::size_t{1} << k);
    for (std::size_t i = 0; i < state.dim(); i++) {
        std::size_t key = 0;
        for (int q : measured) {
            key = (key << 1) | ((i >> (n - 1 - q)) & 1);
        }
        out[key] += std::norm(state[i]);
    }
    return out;
}

}  // namespace

double outcome_probability(const PureState &state, std::span<const int> qubits, std::string_view bits) {
    if (qubits.size() != bits.size()) {
        throw InputError("qubit list and bitstring lengths differ");
    }
    auto measured = all_or(qubits, state.qubit_count());
    auto probs = marginal_probabilities(state, measured);
    return probs[bits_to_index(bits)];
}

ShotHistogram sample_shots(const PureState &state, std::uint64_t shots, Rng &rng, std::span<const int> qubits) {
    if (shots == 0) {
        throw InputError("shots must be positive");
    }
    auto measured = all_or(qubits, state.qubit_count());
    auto probs = marginal_probabilities(state, measured);
    std::vector<double> cumulative(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
    double total = cumulative.back();
    std::uniform_real_distribution<double> uniform(0.0, total);
    std::vector<std::uint64_t> tally(probs.size());
    for (std::uint64_t s = 0; s < shots; s++) {
        double u = uniform(rng);
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), probs.size() - 1);
        // Never report an outcome of probability zero, even on a boundary draw.
        while (probs[idx] == 0.0 && idx > 0) {
            idx--;
        }
        tally[idx]++;
    }
    ShotHistogram out;
    out.shots = shots;
    int width = static_cast<int>(measured.size());
    for (std::size_t i = 0; i < tally.size(); i++) {
        if (tally[i]) {
            out.counts[index_to_bits(i, width)] = tally[i];
        }
    }
    return out;
}

std::map<std::string, double> outcome_distribution(const PureState &state, std::span<const int> qubits) {
    auto measured = all_or(qubits, state.qubit_count());
    auto probs = marginal_probabilities(state, measured);
    std::map<std::string, double> out;
    int width = static_cast<int>(measured.size());
    for (std::size_t i = 0; i < probs.size(); i++) {
        if (probs[i] > 1e-15) {
            out[index_to_bits(i, width)] = probs[i];
        }
    }
    return out;
}

PureState tensor_product(const PureState &a, const PureState &b) {
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); i++) {
        for (std::size_t j = 0; j < b.dim(); j++) {
            amps[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return PureState(a.qubit_count() + b.qubit_count(), std::move(amps));
}

double overlap_sq(const PureState &a, const PureState &b) {
    if (a.qubit_count() != b.qubit_count()) {
        throw InputError("overlap of states with different qubit counts");
    }
    Complex inner{};
    for (std::size_t i = 0; i < a.dim(); i++) {
        inner += std::conj(a[i]) * b[i];
    }
    return std::min(1.0, std::norm(inner));
}

std::vector<GateOp> decompose(const GateOp &op) {
    using K = GateKind;
    if (op.kind == K::TOFFOLI) {
        if (op.targets.size() != 3) {
            throw InputError("TOFFOLI needs three qubits");
        }
        int c1 = op.targets[0], c2 = op.targets[1], t = op.targets[2];
        return {
            {K::H, {t}},          {K::CNOT, {c2, t}}, {K::Tdg, {t}},      {K::CNOT, {c1, t}}, {K::T, {t}},
            {K::CNOT, {c2, t}},   {K::Tdg, {t}},      {K::CNOT, {c1, t}}, {K::T, {c2}},       {K::T, {t}},
            {K::H, {t}},          {K::CNOT, {c1, c2}}, {K::T, {c1}},      {K::Tdg, {c2}},     {K::CNOT, {c1, c2}},
        };
    }
    if (op.kind == K::CSWAP) {
        if (op.targets.size() != 3) {
            throw InputError("CSWAP needs three qubits");
        }
        int c = op.targets[0], a = op.targets[1], b = op.targets[2];
        std::vector<GateOp> out{{K::CNOT, {b, a}}};
        auto tof = decompose({K::TOFFOLI, {c, a, b}});
        out.insert(out.end(), tof.begin(), tof.end());
        out.push_back({K::CNOT, {b, a}});
        return out;
    }
    throw InputError("decompose supports only TOFFOLI and CSWAP, got " + std::string(gate_name(op.kind)));
}

Circuit decompose_circuit(const Circuit &circuit) {
    Circuit out(circuit.qubit_count);
    for (const auto &op : circuit.ops) {
        if (op.kind == GateKind::TOFFOLI || op.kind == GateKind::CSWAP) {
            auto parts = decompose(op);
            out.ops.insert(out.ops.end(), parts.begin(), parts.end());
        } else {
            out.ops.push_back(op);
        }
    }
    return out;
}

ShotHistogram apply_bitflip_noise(const ShotHistogram &histogram, double p, Rng &rng) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InputError("bit-flip probability must lie in [0, 1]");
    }
    if (p == 0.0) {
        return histogram;
    }
    std::bernoulli_distribution flip(p);
    ShotHistogram out;
    out.shots = histogram.shots;
    for (const auto &[key, count] : histogram.counts) {
        for (std::uint64_t s = 0; s < count; s++) {
            std::string noisy = key;
            for (char &c : noisy) {
                if (flip(rng)) {
                    c = c == '0' ? '1' : '0';
                }
            }
            out.counts[noisy]++;
        }
    }
    return out;
}

CMatrix circuit_unitary(const Circuit &circuit) {
    circuit.validate();
    std::size_t dim = std::size_t{1} << circuit.qubit_count;
    CMatrix u(dim);
    for (std::size_t c = 0; c < dim; c++) {
        auto state = run_circuit(init_basis(circuit.qubit_count, index_to_bits(c, circuit.qubit_count)), circuit);
        for (std::size_t r = 0; r < dim; r++) {
            u(r, c) = state[r];
        }
    }
    return u;
}

double total_variation(const std::map<std::string, double> &p, const std::map<std::string, double> &q) {
    double total = 0;
    for (const auto &[k, v] : p) {
        auto it = q.find(k);
        total += std::abs(v - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto &[k, v] : q) {
        if (!p.contains(k)) {
            total += v;
        }
    }
    return total / 2;
}

}  // namespace qhekm
