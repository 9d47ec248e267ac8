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

#ifndef QHEKM_PROTOCOL_H
#define QHEKM_PROTOCOL_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qhekm/keyledger.h"
#include "qhekm/qotp.h"
#include "qhekm/statevector.h"

namespace qhekm {

/// The three roles of a delegated session: the data owner, the semi-trusted
/// evaluator that runs the circuit on ciphertext, and the key-holding trusted
/// server that assists every T gate.
enum class Party { client, evaluator, trusted };

std::string_view party_name(Party party);
Party parse_party(std::string_view name);

struct CiphertextUpload {
    int qubit_count = 0;
    std::string descriptor;
    bool operator==(const CiphertextUpload &) const = default;
};
struct KeyDeposit {
    KeySet keys;
    bool operator==(const KeyDeposit &) const = default;
};
struct TAssistRequest {
    int qubit = 0;
    int step = 0;
    GateKind gate = GateKind::T;
    bool operator==(const TAssistRequest &) const = default;
};
struct TAssistDone {
    int step = 0;
    bool operator==(const TAssistDone &) const = default;
};
struct EvalResult {
    ShotHistogram histogram;
    bool operator==(const EvalResult &) const = default;
};
struct FinalKeyDelivery {
    KeySet keys;
    bool operator==(const FinalKeyDelivery &) const = default;
};

using Payload = std::variant<CiphertextUpload, KeyDeposit, TAssistRequest, TAssistDone, EvalResult, FinalKeyDelivery>;

struct Message {
    Party sender = Party::client;
    Party recipient = Party::evaluator;
    Payload payload;

    std::string_view type_name() const;
    bool operator==(const Message &) const = default;
};

struct Transcript {
    std::vector<Message> messages;
    bool operator==(const Transcript &) const = default;
};

struct AuditReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks sender/recipient legality, session ordering and single delivery of
/// the result and final key. Never throws; problems go in `violations`.
AuditReport audit(const Transcript &transcript);

/// A message as seen by the evaluator. Carries no key material by construction.
struct EvaluatorViewEntry {
    Party sender = Party::client;
    Party recipient = Party::evaluator;
    std::string type;
    int qubit_count = 0;            // CiphertextUpload
    std::string descriptor;         // CiphertextUpload
    int qubit = -1;                 // TAssistRequest
    int step = -1;                  // TAssistRequest / TAssistDone
    std::optional<ShotHistogram> histogram;  // EvalResult
};

struct EvaluatorView {
    std::vector<EvaluatorViewEntry> entries;
    std::vector<std::string> type_sequence() const;
};

/// Messages the evaluator sends or receives. KeyDeposit and FinalKeyDelivery never appear.
EvaluatorView evaluator_view(const Transcript &transcript);

struct DelegationOptions {
    std::uint64_t shots = 8192;
    TGateMode mode = TGateMode::trusted_fresh_key;
    double noise_p = 0.0;  // measurement bit-flip probability applied by the evaluator
};

struct DelegatedResult {
    ShotHistogram decrypted;
    ShotHistogram ciphertext;
    KeySet final_keys;
    Transcript transcript;
    std::vector<LedgerEntry> ledger;
    /// Simulator-side snapshot of the ciphertext register right before measurement.
    PureState final_state{1};
};

/// Runs one delegated session. The client prepares `plaintext_prep` on |0..0>,
/// encrypts it, uploads the ciphertext and deposits the key. The evaluator runs
/// `eval_circuit` on ciphertext and pauses at each T/Tdg for the trusted party.
/// Afterwards it measures every qubit and returns the histogram; the trusted
/// party delivers the final key and the client XOR-decrypts.
DelegatedResult run_delegated(const Circuit &plaintext_prep, const Circuit &eval_circuit, const KeySet &initial_keys,
                              const DelegationOptions &options, Rng &rng);

/// Exact decrypted outcome distribution, from the final ciphertext amplitudes and final key.
std::map<std::string, double> analytic_decrypted_distribution(const DelegatedResult &result);

}  // namespace qhekm

#endif
