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

#include "qhekm/protocol.h"

#include <set>

namespace qhekm {

std::string_view party_name(Party party) {
    switch (party) {
        case Party::client:
            return "client";
        case Party::evaluator:
            return "evaluator";
        case Party::trusted:
            return "trusted";
    }
    return "?";
}

Party parse_party(std::string_view name) {
    if (name == "client") {
        return Party::client;
    }
    if (name == "evaluator") {
        return Party::evaluator;
    }
    if (name == "trusted") {
        return Party::trusted;
    }
    throw InputError("unknown party '" + std::string(name) + "'");
}

namespace {

struct Route {
    std::string_view type;
    Party sender;
    Party recipient;
};

// Indexed by Payload alternative.
constexpr Route kRoutes[] = {
    {"CiphertextUpload", Party::client, Party::evaluator},
    {"KeyDeposit", Party::client, Party::trusted},
    {"TAssistRequest", Party::evaluator, Party::trusted},
    {"TAssistDone", Party::trusted, Party::evaluator},
    {"EvalResult", Party::evaluator, Party::client},
    {"FinalKeyDelivery", Party::trusted, Party::client},
};

const Route &route(const Message &m) {
    return kRoutes[m.payload.index()];
}

}  // namespace

std::string_view Message::type_name() const {
    return route(*this).type;
}

AuditReport audit(const Transcript &transcript) {
    AuditReport report;
    auto fail = [&](std::string v) {
        report.ok = false;
        report.violations.push_back(std::move(v));
    };

    int uploads = 0, deposits = 0, results = 0, final_keys = 0;
    std::optional<int> pending;
    int last_step = 0;
    for (std::size_t i = 0; i < transcript.messages.size(); i++) {
        const auto &m = transcript.messages[i];
        const auto &r = route(m);
        std::string where = "message " + std::to_string(i) + " (" + std::string(r.type) + ")";
        if (m.sender != r.sender || m.recipient != r.recipient) {
            fail("sender-legality: " + where + " must go " + std::string(party_name(r.sender)) + " -> " +
                 std::string(party_name(r.recipient)) + ", got " + std::string(party_name(m.sender)) + " -> " +
                 std::string(party_name(m.recipient)));
        }
        bool setup_done = uploads > 0 && deposits > 0;
        std::visit(
            [&](const auto &p) {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, CiphertextUpload>) {
                    uploads++;
                } else if constexpr (std::is_same_v<P, KeyDeposit>) {
                    deposits++;
                } else if constexpr (std::is_same_v<P, TAssistRequest>) {
                    if (!setup_done) {
                        fail("ordering: " + where + " before ciphertext upload and key deposit");
                    }
                    if (pending) {
                        fail("ordering: " + where + " while step " + std::to_string(*pending) + " is unanswered");
                    }
                    if (results) {
                        fail("ordering: " + where + " after the evaluation result");
                    }
                    if (p.step <= last_step) {
                        fail("ordering: " + where + " has non-increasing step " + std::to_string(p.step));
                    }
                    last_step = p.step;
                    pending = p.step;
                } else if constexpr (std::is_same_v<P, TAssistDone>) {
                    if (!pending || *pending != p.step) {
                        fail("ordering: " + where + " answers step " + std::to_string(p.step) +
                             " which has no open request");
                    }
                    pending.reset();
                } else if constexpr (std::is_same_v<P, EvalResult>) {
                    if (!setup_done) {
                        fail("ordering: " + where + " before ciphertext upload and key deposit");
                    }
                    if (pending) {
                        fail("ordering: " + where + " while step " + std::to_string(*pending) + " is unanswered");
                    }
                    results++;
                } else if constexpr (std::is_same_v<P, FinalKeyDelivery>) {
                    if (pending) {
                        fail("ordering: " + where + " while step " + std::to_string(*pending) + " is unanswered");
                    }
                    final_keys++;
                }
            },
            m.payload);
        if (std::holds_alternative<TAssistRequest>(m.payload) && final_keys) {
            fail("ordering: " + where + " after the final key was delivered");
        }
    }
    if (uploads != 1) {
        fail("cardinality: expected exactly one CiphertextUpload, found " + std::to_string(uploads));
    }
    if (deposits != 1) {
        fail("cardinality: expected exactly one KeyDeposit, found " + std::to_string(deposits));
    }
    if (results != 1) {
        fail("cardinality: expected exactly one EvalResult, found " + std::to_string(results));
    }
    if (final_keys != 1) {
        fail("cardinality: expected exactly one FinalKeyDelivery, found " + std::to_string(final_keys));
    }
    if (pending) {
        fail("ordering: step " + std::to_string(*pending) + " was never answered");
    }
    return report;
}

std::vector<std::string> EvaluatorView::type_sequence() const {
    std::vector<std::string> out;
    for (const auto &e : entries) {
        out.push_back(e.type);
    }
    return out;
}

EvaluatorView evaluator_view(const Transcript &transcript) {
    EvaluatorView view;
    for (const auto &m : transcript.messages) {
        if (m.sender != Party::evaluator && m.recipient != Party::evaluator) {
            continue;
        }
        EvaluatorViewEntry e;
        e.sender = m.sender;
        e.recipient = m.recipient;
        e.type = std::string(m.type_name());
        bool keep = std::visit(
            [&](const auto &p) {
                using P = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<P, CiphertextUpload>) {
                    e.qubit_count = p.qubit_count;
                    e.descriptor = p.descriptor;
                } else if constexpr (std::is_same_v<P, TAssistRequest>) {
                    e.qubit = p.qubit;
                    e.step = p.step;
                } else if constexpr (std::is_same_v<P, TAssistDone>) {
                    e.step = p.step;
                } else if constexpr (std::is_same_v<P, EvalResult>) {
                    e.histogram = p.histogram;
                } else {
                    return false;  // key-bearing payloads are dropped even if misaddressed
                }
                return true;
            },
            m.payload);
        if (keep) {
            view.entries.push_back(std::move(e));
        }
    }
    return view;
}

namespace {

// Temporary access to one qubit of the shared register. Models the quantum
// channel over which the evaluator hands a qubit to the trusted party.
class QubitGrant {
   public:
    QubitGrant(PureState &reg, int qubit) : reg_(reg), qubit_(qubit) {}
    void apply(GateKind kind) { reg_.apply(GateOp{kind, {qubit_}}); }
    int qubit() const { return qubit_; }

   private:
    PureState &reg_;
    int qubit_;
};

void undo_pad(QubitGrant &g, const KeyBitPair &k) {
    if (k.a) {
        g.apply(GateKind::X);
    }
    if (k.b) {
        g.apply(GateKind::Z);
    }
}

void apply_pad(QubitGrant &g, const KeyBitPair &k) {
    if (k.b) {
        g.apply(GateKind::Z);
    }
    if (k.a) {
        g.apply(GateKind::X);
    }
}

class Client {
   public:
    explicit Client(KeySet keys) : keys_(std::move(keys)) {}

    PureState prepare_ciphertext(const Circuit &prep) const {
        if (prep.qubit_count != keys_.size()) {
            throw InputError("preparation circuit width does not match keyset length");
        }
        prep.validate();
        return encrypt(run_circuit(PureState(prep.qubit_count), prep), keys_);
    }

    Message upload(int qubit_count) const {
        return {Party::client, Party::evaluator,
                CiphertextUpload{qubit_count, std::to_string(qubit_count) + "-qubit QOTP ciphertext register"}};
    }

    Message deposit() const { return {Party::client, Party::trusted, KeyDeposit{keys_}}; }

    void receive(const Message &m) {
        if (const auto *r = std::get_if<EvalResult>(&m.payload)) {
            result_ = r->histogram;
        } else if (const auto *k = std::get_if<FinalKeyDelivery>(&m.payload)) {
            final_keys_ = k->keys;
        } else {
            throw ProtocolError("client received unexpected " + std::string(m.type_name()));
        }
    }

    ShotHistogram decrypt_result() const {
        if (!result_ || !final_keys_) {
            throw ProtocolError("client cannot decrypt before both the result and the final key arrive");
        }
        return decrypt_histogram(*result_, *final_keys_);
    }

    const KeySet &final_keys() const { return *final_keys_; }
    const ShotHistogram &ciphertext_result() const { return *result_; }

   private:
    KeySet keys_;
    std::optional<ShotHistogram> result_;
    std::optional<KeySet> final_keys_;
};

class Evaluator {
   public:
    Evaluator(const Circuit &circuit, TGateMode mode) : circuit_(circuit), mode_(mode) {}

    void receive(const Message &m) {
        if (const auto *u = std::get_if<CiphertextUpload>(&m.payload)) {
            if (u->qubit_count != circuit_.qubit_count) {
                throw ProtocolError("uploaded register width does not match the circuit");
            }
            ready_ = true;
        } else if (const auto *d = std::get_if<TAssistDone>(&m.payload)) {
            if (!waiting_ || *waiting_ != d->step) {
                throw ProtocolError("evaluator received an unsolicited TAssistDone");
            }
            waiting_.reset();
        } else {
            throw ProtocolError("evaluator received unexpected " + std::string(m.type_name()));
        }
    }

    bool finished() const { return next_ >= circuit_.ops.size(); }

    // Runs Clifford gates until the next T-type gate and returns the request
    // for it, or nothing when the circuit is exhausted.
    std::optional<Message> advance(PureState &reg) {
        if (!ready_) {
            throw ProtocolError("evaluator has no ciphertext to work on");
        }
        if (waiting_) {
            throw ProtocolError("evaluator cannot proceed while a T assist is outstanding");
        }
        while (next_ < circuit_.ops.size()) {
            const auto &op = circuit_.ops[next_];
            int step = static_cast<int>(++next_);
            if (is_t_type(op.kind)) {
                if (mode_ == TGateMode::algebraic) {
                    reg.apply(op);
                }
                waiting_ = step;
                return Message{Party::evaluator, Party::trusted, TAssistRequest{op.targets[0], step, op.kind}};
            }
            reg.apply(op);
        }
        return std::nullopt;
    }

    Message measure(const PureState &reg, const DelegationOptions &options, Rng &rng) const {
        if (!finished() || waiting_) {
            throw ProtocolError("evaluator measured before finishing the circuit");
        }
        auto histogram = sample_shots(reg, options.shots, rng);
        if (options.noise_p > 0) {
            histogram = apply_bitflip_noise(histogram, options.noise_p, rng);
        }
        return {Party::evaluator, Party::client, EvalResult{std::move(histogram)}};
    }

   private:
    const Circuit &circuit_;
    TGateMode mode_;
    bool ready_ = false;
    std::size_t next_ = 0;
    std::optional<int> waiting_;
};

class TrustedServer {
   public:
    TrustedServer(const Circuit &circuit, TGateMode mode, std::uint64_t seed)
        : circuit_(circuit), mode_(mode), rng_(seed) {}

    void receive(const Message &m) {
        const auto *d = std::get_if<KeyDeposit>(&m.payload);
        if (!d) {
            throw ProtocolError("trusted server received unexpected " + std::string(m.type_name()));
        }
        if (d->keys.size() != circuit_.qubit_count) {
            throw ProtocolError("deposited keyset does not match the circuit width");
        }
        ledger_.emplace(d->keys, mode_, rng_);
    }

    Message assist(const TAssistRequest &req, QubitGrant grant) {
        if (!ledger_) {
            throw ProtocolError("T assist requested before the key deposit");
        }
        catch_up(req.step - 1);
        const auto &op = circuit_.ops.at(static_cast<std::size_t>(req.step - 1));
        if (!is_t_type(op.kind) || op.targets[0] != req.qubit || op.targets[0] != grant.qubit()) {
            throw ProtocolError("T assist request does not match the public circuit at step " + std::to_string(req.step));
        }
        KeyBitPair before = ledger_->current()[req.qubit];
        const auto &entry = ledger_->apply(op);
        KeyBitPair after = entry.keys_after[req.qubit];
        if (mode_ == TGateMode::algebraic) {
            if (entry.s_correction_flags[req.qubit]) {
                grant.apply(op.kind == GateKind::T ? GateKind::S : GateKind::Sdg);
            }
        } else {
            undo_pad(grant, before);
            grant.apply(op.kind);
            apply_pad(grant, after);
        }
        return {Party::trusted, Party::evaluator, TAssistDone{req.step}};
    }

    Message finalize() {
        if (!ledger_) {
            throw ProtocolError("final key requested before the key deposit");
        }
        catch_up(static_cast<int>(circuit_.ops.size()));
        return {Party::trusted, Party::client, FinalKeyDelivery{ledger_->current()}};
    }

    const std::vector<LedgerEntry> &entries() const { return ledger_->entries(); }

   private:
    // Applies Clifford key updates for every step up to and including `step`.
    void catch_up(int step) {
        while (static_cast<int>(ledger_->entries().size()) < step) {
            const auto &op = circuit_.ops[ledger_->entries().size()];
            if (is_t_type(op.kind)) {
                throw ProtocolError("T gate at step " + std::to_string(ledger_->entries().size() + 1) +
                                    " was executed without an assist request");
            }
            ledger_->apply(op);
        }
    }

    const Circuit &circuit_;
    TGateMode mode_;
    Rng rng_;
    std::optional<KeyLedger> ledger_;
};

void check_eval_circuit(const Circuit &circuit) {
    circuit.validate();
    for (const auto &op : circuit.ops) {
        if (!is_clifford(op.kind) && !is_t_type(op.kind)) {
            throw InputError("evaluator cannot run " + op.str() + "; supported gates are Clifford, T and Tdg");
        }
    }
}

}  // namespace

DelegatedResult run_delegated(const Circuit &plaintext_prep, const Circuit &eval_circuit, const KeySet &initial_keys,
                              const DelegationOptions &options, Rng &rng) {
    check_eval_circuit(eval_circuit);
    if (plaintext_prep.qubit_count != eval_circuit.qubit_count) {
        throw InputError("preparation and evaluation circuits have different widths");
    }
    if (options.shots == 0) {
        throw InputError("shots must be positive");
    }
    std::uint64_t trusted_seed = rng();
    std::uint64_t measure_seed = rng();
    Rng measure_rng(measure_seed);

    Client client(initial_keys);
    Evaluator evaluator(eval_circuit, options.mode);
    TrustedServer trusted(eval_circuit, options.mode, trusted_seed);
    Transcript transcript;

    auto deliver = [&](Message m) {
        transcript.messages.push_back(m);
        switch (m.recipient) {
            case Party::client:
                client.receive(m);
                break;
            case Party::evaluator:
                evaluator.receive(m);
                break;
            case Party::trusted:
                trusted.receive(m);
                break;
        }
    };

    // The register travels from client to evaluator over the quantum channel.
    PureState channel = client.prepare_ciphertext(plaintext_prep);
    deliver(client.upload(channel.qubit_count()));
    deliver(client.deposit());

    while (auto request = evaluator.advance(channel)) {
        transcript.messages.push_back(*request);
        const auto &req = std::get<TAssistRequest>(request->payload);
        deliver(trusted.assist(req, QubitGrant(channel, req.qubit)));
    }
    deliver(evaluator.measure(channel, options, measure_rng));
    deliver(trusted.finalize());

    auto report = audit(transcript);
    if (!report.ok) {
        throw ProtocolError("session transcript failed audit: " + report.violations.front());
    }

    DelegatedResult result;
    result.ciphertext = client.ciphertext_result();
    result.final_keys = client.final_keys();
    result.decrypted = client.decrypt_result();
    result.transcript = std::move(transcript);
    result.ledger = trusted.entries();
    result.final_state = std::move(channel);
    return result;
}

std::map<std::string, double> analytic_decrypted_distribution(const DelegatedResult &result) {
    std::map<std::string, double> out;
    for (const auto &[bits, p] : outcome_distribution(result.final_state)) {
        out[decrypt_bits(bits, result.final_keys)] += p;
    }
    return out;
}

}  // namespace qhekm
