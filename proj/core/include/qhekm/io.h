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

#ifndef QHEKM_IO_H
#define QHEKM_IO_H

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qhekm/groveropt.h"
#include "qhekm/keyledger.h"
#include "qhekm/kmeans.h"
#include "qhekm/protocol.h"
#include "qhekm/swaptest.h"

namespace qhekm {

using Json = nlohmann::ordered_json;

/// {"qubits": n, "ops": [{"gate": "H", "targets": [0]}, ...]}; RY and CRY carry "angle".
Json circuit_to_json(const Circuit &circuit);
Circuit circuit_from_json(const Json &j);

/// {"shots": n, "counts": {"000": 4096, ...}}
Json histogram_to_json(const ShotHistogram &histogram);
ShotHistogram histogram_from_json(const Json &j);

/// {"pairs": [[1,1],[0,1],[0,1]]}
Json keyset_to_json(const KeySet &keys);
KeySet keyset_from_json(const Json &j);
/// A JSON document, a path to one, or the inline "{1,1},{0,1}" form.
KeySet load_keyset(const std::string &file_or_inline);

/// {"index_bits": 3, "values": {"000": 1, "...": 7}, "max_value": 7}.
/// The "..." entry fills every index not listed; max_value defaults to the largest value.
Json value_table_to_json(const ValueTable &table);
ValueTable value_table_from_json(const Json &j);

Json ledger_to_json(const LedgerRun &run);
Json similarity_to_json(const SimilarityEstimate &estimate);
Json min_result_to_json(const MinResult &result);

Json message_to_json(const Message &message);
Message message_from_json(const Json &j);
/// One message per line.
std::string transcript_to_jsonl(const Transcript &transcript);
Transcript transcript_from_jsonl(std::istream &in);

struct KMeansConfig {
    int k = 2;
    double tau = 1e-6;
    int max_iters = 20;
    PipelineConfig pipeline;
    std::uint64_t seed = 0;
    std::optional<std::vector<DataPoint>> initial_centroids;
};

/// {k, tau, max_iters, mode, shots, levels, seed, initial_centroids?}; minfind_shots and t_mode optional.
KMeansConfig kmeans_config_from_json(const Json &j);
Json kmeans_run_to_json(const KMeansRun &run);

/// One point per row, comma separated; blank lines and lines starting with '#' are skipped.
std::vector<DataPoint> read_dataset_csv(std::istream &in);

std::string read_file(const std::string &path);
Json read_json_file(const std::string &path);

}  // namespace qhekm

#endif
