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

#include "qhekm/io.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhekm/errors.h"

namespace qhekm {

namespace {

template <typename F>
auto guarded(const char *what, F body) -> decltype(body()) {
    try {
        return body();
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed ") + what + ": " + e.what());
    }
}

Json points_to_json(const std::vector<DataPoint> &points) {
    Json out = Json::array();
    for (const auto &p : points) {
        out.push_back(p);
    }
    return out;
}

}  // namespace

Json circuit_to_json(const Circuit &circuit) {
    Json ops = Json::array();
    for (const auto &op : circuit.ops) {
        Json o{{"gate", gate_name(op.kind)}, {"targets", op.targets}};
        if (op.kind == GateKind::RY || op.kind == GateKind::CRY) {
            o["angle"] = op.angle;
        }
        ops.push_back(std::move(o));
    }
    return Json{{"qubits", circuit.qubit_count}, {"ops", std::move(ops)}};
}

Circuit circuit_from_json(const Json &j) {
    Circuit c = guarded("circuit", [&] {
        Circuit out(j.at("qubits").get<int>());
        for (const auto &o : j.at("ops")) {
            out.ops.push_back(GateOp{parse_gate_name(o.at("gate").get<std::string>()),
                                     o.at("targets").get<std::vector<int>>(), o.value("angle", 0.0)});
        }
        return out;
    });
    if (c.qubit_count < 1) {
        throw InputError("circuit needs at least one qubit");
    }
    c.validate();
    return c;
}

Json histogram_to_json(const ShotHistogram &histogram) {
    Json counts = Json::object();
    for (const auto &[bits, n] : histogram.counts) {
        counts[bits] = n;
    }
    return Json{{"shots", histogram.shots}, {"counts", std::move(counts)}};
}

ShotHistogram histogram_from_json(const Json &j) {
    return guarded("histogram", [&] {
        ShotHistogram h;
        h.shots = j.at("shots").get<std::uint64_t>();
        std::uint64_t total = 0;
        for (const auto &[bits, n] : j.at("counts").items()) {
            validate_bits(bits);
            h.counts[bits] = n.get<std::uint64_t>();
            total += h.counts[bits];
        }
        if (total != h.shots) {
            throw InputError("histogram counts do not sum to shots");
        }
        return h;
    });
}

Json keyset_to_json(const KeySet &keys) {
    Json pairs = Json::array();
    for (const auto &p : keys.pairs) {
        pairs.push_back(Json::array({p.a, p.b}));
    }
    return Json{{"pairs", std::move(pairs)}};
}

KeySet keyset_from_json(const Json &j) {
    return guarded("key set", [&] {
        std::vector<KeyBitPair> pairs;
        for (const auto &p : j.at("pairs")) {
            if (!p.is_array() || p.size() != 2) {
                throw InputError("each key pair must be [a, b]");
            }
            int a = p[0].get<int>(), b = p[1].get<int>();
            if ((a != 0 && a != 1) || (b != 0 && b != 1)) {
                throw InputError("key bits must be 0 or 1");
            }
            pairs.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)});
        }
        if (pairs.empty()) {
            throw InputError("key set is empty");
        }
        return KeySet(std::move(pairs));
    });
}

KeySet load_keyset(const std::string &file_or_inline) {
    std::string text = file_or_inline;
    if (!text.empty() && text.front() != '{' && std::filesystem::exists(text)) {
        text = read_file(text);
    }
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{' && text.find('"') != std::string::npos) {
        return keyset_from_json(guarded("key set", [&] { return Json::parse(text); }));
    }
    return parse_keyset(text);
}

Json value_table_to_json(const ValueTable &table) {
    Json values = Json::object();
    for (const auto &[bits, v] : table.values) {
        values[bits] = v;
    }
    return Json{{"index_bits", table.index_bits}, {"values", std::move(values)}, {"max_value", table.max_value}};
}

ValueTable value_table_from_json(const Json &j) {
    ValueTable t = guarded("value table", [&] {
        ValueTable out;
        out.index_bits = j.at("index_bits").get<int>();
        if (out.index_bits < 1 || out.index_bits > max_qubits()) {
            throw InputError("index_bits out of range");
        }
        std::optional<std::int64_t> fill;
        for (const auto &[bits, v] : j.at("values").items()) {
            if (bits == "...") {
                fill = v.get<std::int64_t>();
                continue;
            }
            validate_bits(bits);
            if (static_cast<int>(bits.size()) != out.index_bits) {
                throw InputError("table index '" + bits + "' has the wrong width");
            }
            out.values[bits] = v.get<std::int64_t>();
        }
        if (fill) {
            for (std::uint64_t i = 0; i < out.size(); i++) {
                out.values.try_emplace(index_to_bits(i, out.index_bits), *fill);
            }
        }
        std::int64_t largest = 0;
        for (const auto &[bits, v] : out.values) {
            largest = std::max(largest, v);
        }
        out.max_value = j.contains("max_value") ? j["max_value"].get<std::int64_t>() : largest;
        return out;
    });
    t.validate();
    return t;
}

Json ledger_to_json(const LedgerRun &run) {
    Json steps = Json::array();
    for (const auto &e : run.entries) {
        Json s{{"step", e.step}, {"gate", e.gate.str()}, {"keys", keyset_to_json(e.keys_after)["pairs"]}};
        bool any = false;
        for (auto f : e.s_correction_flags) {
            any = any || f;
        }
        if (any) {
            s["s_correction"] = e.s_correction_flags;
        }
        steps.push_back(std::move(s));
    }
    return Json{{"initial", keyset_to_json(run.initial)["pairs"]},
                {"steps", std::move(steps)},
                {"final", keyset_to_json(run.final_keys)["pairs"]},
                {"final_a_bits", run.final_keys.a_bits()},
                {"final_b_bits", run.final_keys.b_bits()}};
}

Json similarity_to_json(const SimilarityEstimate &estimate) {
    return Json{{"p0", estimate.p0},
                {"similarity", estimate.similarity},
                {"shots", estimate.shots},
                {"std_error", estimate.std_error}};
}

Json min_result_to_json(const MinResult &result) {
    Json trace = Json::array();
    for (const auto &r : result.trace) {
        trace.push_back(Json{{"threshold", r.threshold},
                             {"marked_count", r.marked_count},
                             {"grover_iterations", r.grover_iterations},
                             {"sampled", r.sampled},
                             {"sampled_value", r.sampled_value}});
    }
    return Json{{"a_min", result.a_min},
                {"b_min", result.b_min},
                {"iterations_used", result.iterations_used},
                {"trace", std::move(trace)}};
}

Json message_to_json(const Message &message) {
    Json j{{"sender", party_name(message.sender)},
           {"recipient", party_name(message.recipient)},
           {"type", message.type_name()}};
    std::visit(
        [&](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, CiphertextUpload>) {
                j["qubit_count"] = p.qubit_count;
                j["descriptor"] = p.descriptor;
            } else if constexpr (std::is_same_v<T, KeyDeposit> || std::is_same_v<T, FinalKeyDelivery>) {
                j["keys"] = keyset_to_json(p.keys)["pairs"];
            } else if constexpr (std::is_same_v<T, TAssistRequest>) {
                j["qubit"] = p.qubit;
                j["step"] = p.step;
                j["gate"] = gate_name(p.gate);
            } else if constexpr (std::is_same_v<T, TAssistDone>) {
                j["step"] = p.step;
            } else {
                j["histogram"] = histogram_to_json(p.histogram);
            }
        },
        message.payload);
    return j;
}

Message message_from_json(const Json &j) {
    return guarded("message", [&] {
        Message m;
        m.sender = parse_party(j.at("sender").get<std::string>());
        m.recipient = parse_party(j.at("recipient").get<std::string>());
        std::string type = j.at("type").get<std::string>();
        if (type == "CiphertextUpload") {
            m.payload = CiphertextUpload{j.at("qubit_count").get<int>(), j.at("descriptor").get<std::string>()};
        } else if (type == "KeyDeposit") {
            m.payload = KeyDeposit{keyset_from_json(Json{{"pairs", j.at("keys")}})};
        } else if (type == "TAssistRequest") {
            m.payload = TAssistRequest{j.at("qubit").get<int>(), j.at("step").get<int>(),
                                       parse_gate_name(j.value("gate", std::string("T")))};
        } else if (type == "TAssistDone") {
            m.payload = TAssistDone{j.at("step").get<int>()};
        } else if (type == "EvalResult") {
            m.payload = EvalResult{histogram_from_json(j.at("histogram"))};
        } else if (type == "FinalKeyDelivery") {
            m.payload = FinalKeyDelivery{keyset_from_json(Json{{"pairs", j.at("keys")}})};
        } else {
            throw InputError("unknown message type '" + type + "'");
        }
        return m;
    });
}

std::string transcript_to_jsonl(const Transcript &transcript) {
    std::string out;
    for (const auto &m : transcript.messages) {
        out += message_to_json(m).dump();
        out += '\n';
    }
    return out;
}

Transcript transcript_from_jsonl(std::istream &in) {
    Transcript t;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        number++;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            t.messages.push_back(message_from_json(Json::parse(line)));
        } catch (const nlohmann::json::exception &e) {
            throw InputError("transcript line " + std::to_string(number) + ": " + e.what());
        } catch (const InputError &e) {
            throw InputError("transcript line " + std::to_string(number) + ": " + e.what());
        }
    }
    return t;
}

KMeansConfig kmeans_config_from_json(const Json &j) {
    return guarded("k-means config", [&] {
        KMeansConfig c;
        c.k = j.value("k", c.k);
        c.tau = j.value("tau", c.tau);
        c.max_iters = j.value("max_iters", c.max_iters);
        if (j.contains("mode")) {
            c.pipeline.mode = parse_pipeline_mode(j["mode"].get<std::string>());
        }
        c.pipeline.shots = j.value("shots", c.pipeline.shots);
        c.pipeline.levels = j.value("levels", c.pipeline.levels);
        c.pipeline.minfind_shots = j.value("minfind_shots", c.pipeline.minfind_shots);
        if (j.contains("t_mode")) {
            c.pipeline.t_mode = parse_t_mode(j["t_mode"].get<std::string>());
        }
        c.seed = j.value("seed", c.seed);
        if (j.contains("initial_centroids") && !j["initial_centroids"].is_null()) {
            c.initial_centroids = j["initial_centroids"].get<std::vector<DataPoint>>();
        }
        if (c.pipeline.shots < 1 || c.pipeline.minfind_shots < 1) {
            throw InputError("shot counts must be positive");
        }
        if (c.pipeline.levels < 2) {
            throw InputError("levels must be at least 2");
        }
        return c;
    });
}

Json kmeans_run_to_json(const KMeansRun &run) {
    Json centroids = Json::array();
    for (const auto &set : run.centroid_history) {
        centroids.push_back(points_to_json(set));
    }
    return Json{{"iterations", run.state.iteration},
                {"converged", run.converged},
                {"tau", run.state.tau},
                {"assignments", run.state.assignments},
                {"centroids", points_to_json(run.state.centroids)},
                {"assignment_history", run.assignment_history},
                {"centroid_history", std::move(centroids)}};
}

std::vector<DataPoint> read_dataset_csv(std::istream &in) {
    std::vector<DataPoint> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        number++;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        DataPoint p;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) {
            try {
                std::size_t used = 0;
                p.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t\r", used) != std::string::npos) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::exception &) {
                throw InputError("dataset line " + std::to_string(number) + ": '" + cell + "' is not a number");
            }
        }
        if (!out.empty() && p.size() != out.front().size()) {
            throw InputError("dataset line " + std::to_string(number) + " has " + std::to_string(p.size()) +
                             " columns, expected " + std::to_string(out.front().size()));
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json_file(const std::string &path) {
    std::string text = read_file(path);
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace qhekm
