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

#include "cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "qhekm/errors.h"
#include "qhekm/groveropt.h"
#include "qhekm/io.h"
#include "qhekm/kmeans.h"
#include "qhekm/protocol.h"
#include "qhekm/qotp.h"
#include "qhekm/swaptest.h"

namespace qhekm::cli {

namespace {

const std::map<std::string, TGateMode> kTModes{
    {"fresh", TGateMode::trusted_fresh_key},
    {"same-key", TGateMode::trusted_same_key},
    {"algebraic", TGateMode::algebraic},
};

const CLI::Validator kTModeName(
    [](std::string &in) -> std::string {
        auto it = kTModes.find(in);
        if (it == kTModes.end()) {
            return "unknown T mode '" + in + "' (expected fresh, same-key or algebraic)";
        }
        in = std::to_string(static_cast<int>(it->second));
        return {};
    },
    "MODE");

void add_common(CLI::App *sub, RunConfig &c, std::vector<std::string> formats = {"json", "table"}) {
    sub->add_option("--shots", c.shots, "Measurement shots")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    sub->add_option("--output,-o", c.output, "Write the artifact here instead of stdout");
    sub->add_option("--format", c.format, "Output format: json, or table for a human rendering")
        ->capture_default_str()
        ->check(CLI::IsMember(formats));
}

void add_crypto(CLI::App *sub, RunConfig &c) {
    sub->add_flag("--encrypted", c.encrypted, "Delegate through the encrypted protocol");
    sub->add_option("--keys", c.keys, "Key set: JSON file or inline '{1,1},{0,1}'");
    sub->add_option("--t-mode", c.t_mode, "T-gate key handling: fresh, same-key or algebraic")
        ->transform(kTModeName)
        ->option_text("MODE [same-key]")
        ->default_str("same-key");
}

KeySet default_pad(int m) {
    KeySet k = KeySet::zeros(m);
    for (int q = 0; q < m; q++) {
        k[q] = q == 0 ? KeyBitPair{1, 1} : KeyBitPair{0, 1};
    }
    return k;
}

Circuit load_circuit(const std::string &path) { return circuit_from_json(read_json_file(path)); }

MarkedSet parse_marked(const std::string &text, int &m) {
    MarkedSet out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        validate_bits(item);
        if (m == 0) {
            m = static_cast<int>(item.size());
        }
        if (static_cast<int>(item.size()) != m) {
            throw UsageError("marked string '" + item + "' is not " + std::to_string(m) + " bits wide");
        }
        out.insert(item);
    }
    if (out.empty()) {
        throw UsageError("--marked needs at least one bitstring");
    }
    return out;
}

Json probabilities_json(const std::map<std::string, double> &dist) {
    Json j = Json::object();
    for (const auto &[bits, p] : dist) {
        j[bits] = p;
    }
    return j;
}

std::size_t count_assists(const Transcript &t) {
    std::size_t n = 0;
    for (const auto &m : t.messages) {
        n += std::holds_alternative<TAssistRequest>(m.payload);
    }
    return n;
}

Json type_sequence(const EvaluatorView &view) { return view.type_sequence(); }

Json run_swaptest(const RunConfig &c, Rng &rng) {
    Circuit prep_a(1), prep_b(1);
    prep_a.add(GateKind::X, {0});
    if (!c.state_a.empty()) {
        prep_a = load_circuit(c.state_a);
    }
    if (!c.state_b.empty()) {
        prep_b = load_circuit(c.state_b);
    }
    if (prep_a.qubit_count != prep_b.qubit_count) {
        throw InputError("--state-a and --state-b prepare registers of different sizes");
    }
    PureState a = run_circuit(PureState(prep_a.qubit_count), prep_a);
    PureState b = run_circuit(PureState(prep_b.qubit_count), prep_b);
    Json out{{"command", "swaptest"},
             {"encrypted", c.encrypted},
             {"shots", c.shots},
             {"seed", c.seed},
             {"noise", c.noise_p},
             {"analytic_p0", swaptest_p0(a, b)}};
    if (!c.encrypted) {
        out["estimate"] = similarity_to_json(similarity_plain(a, b, c.shots, rng, c.noise_p));
        return out;
    }
    KeySet keys = c.keys.empty() ? random_keyset(prep_a.qubit_count, rng) : load_keyset(c.keys);
    auto r = run_encrypted_swaptest(prep_a, prep_b, keys, c.shots, c.t_mode, rng, c.noise_p);
    std::vector<int> ancilla{0};
    out["t_mode"] = t_mode_name(c.t_mode);
    out["keys"] = keyset_to_json(keys)["pairs"];
    out["final_keys"] = keyset_to_json(r.session.final_keys)["pairs"];
    out["t_assists"] = count_assists(r.session.transcript);
    out["ciphertext_ancilla"] = histogram_to_json(r.session.ciphertext.marginal(ancilla));
    out["decrypted_ancilla"] = histogram_to_json(r.session.decrypted.marginal(ancilla));
    out["estimate"] = similarity_to_json(r.estimate);
    return out;
}

Json run_grover(const RunConfig &c, Rng &rng) {
    int m = c.m;
    MarkedSet marked = parse_marked(c.marked, m);
    if (m < 1) {
        throw UsageError("--m must be positive");
    }
    std::uint64_t n = std::uint64_t{1} << m;
    int iterations = c.iterations ? *c.iterations : (marked.size() < n ? optimal_iterations(n, marked.size()) : 0);
    if (iterations < 0) {
        throw UsageError("--iterations must be non-negative");
    }
    if (c.emit_circuit) {
        Circuit full = grover_prep(m);
        full.qubit_count = std::max(full.qubit_count, m + grover_ancillas(m));
        full.append(grover_eval_circuit(marked, m, iterations));
        return circuit_to_json(full);
    }
    Json marked_json = Json::array();
    for (const auto &s : marked) {
        marked_json.push_back(s);
    }
    Json out{{"command", "grover"},
             {"marked", marked_json},
             {"m", m},
             {"iterations", iterations},
             {"shots", c.shots},
             {"seed", c.seed},
             {"noise", c.noise_p},
             {"encrypted", c.encrypted},
             {"probabilities", probabilities_json(grover_distribution(marked, m, iterations))}};
    if (!c.encrypted) {
        out["histogram"] = histogram_to_json(apply_bitflip_noise(grover_search(marked, m, iterations, c.shots, rng),
                                                                 c.noise_p, rng));
        return out;
    }
    KeySet keys = c.keys.empty() ? default_pad(m) : load_keyset(c.keys);
    auto r = encrypted_grover(marked, m, iterations, keys, c.shots, c.t_mode, rng);
    ShotHistogram cipher = apply_bitflip_noise(r.ciphertext, c.noise_p, rng);
    KeySet index_keys(std::vector<KeyBitPair>(r.final_keys.pairs.begin(), r.final_keys.pairs.begin() + m));
    out["t_mode"] = t_mode_name(c.t_mode);
    out["keys"] = keyset_to_json(keys)["pairs"];
    out["final_keys"] = keyset_to_json(index_keys)["pairs"];
    out["final_a_bits"] = index_keys.a_bits();
    out["t_assists"] = count_assists(r.session.transcript);
    out["ciphertext"] = histogram_to_json(cipher);
    out["decrypted"] = histogram_to_json(decrypt_histogram(cipher, index_keys));
    return out;
}

Json run_minfind(const RunConfig &c, Rng &rng) {
    ValueTable table = c.table.empty() ? ValueTable::reference_example() : value_table_from_json(read_json_file(c.table));
    MinFindOptions options;
    options.budget_rounds = c.budget;
    options.shots_per_round = c.round_shots;
    if (!c.start.empty()) {
        validate_bits(c.start);
        if (static_cast<int>(c.start.size()) != table.index_bits) {
            throw InputError("--start must be " + std::to_string(table.index_bits) + " bits wide");
        }
        options.start = c.start;
    }
    if (c.encrypted) {
        TGateMode mode = c.t_mode;
        std::string fixed = c.keys;
        options.search = [mode, fixed](const MarkedSet &marked, int m, int iterations, std::uint64_t shots, Rng &r) {
            KeySet keys = fixed.empty() ? random_keyset(m, r) : load_keyset(fixed);
            return encrypted_grover(marked, m, iterations, keys, shots, mode, r).decrypted;
        };
    }
    auto result = durr_hoyer_min(table, options, rng);
    Json out{{"command", "minfind"}, {"seed", c.seed}, {"encrypted", c.encrypted}};
    if (c.encrypted) {
        out["t_mode"] = t_mode_name(c.t_mode);
    }
    out["table"] = value_table_to_json(table);
    out["result"] = min_result_to_json(result);
    return out;
}

Json run_ledger_cmd(const RunConfig &c, Rng &rng, std::string &csv) {
    if (c.circuit.empty() || c.keys.empty()) {
        throw UsageError("ledger needs --circuit and --keys");
    }
    Circuit circuit = decompose_circuit(load_circuit(c.circuit));
    KeySet keys = load_keyset(c.keys);
    if (keys.size() < circuit.qubit_count) {
        // Work qubits the client never encrypts carry the zero key.
        keys.pairs.resize(static_cast<std::size_t>(circuit.qubit_count));
    }
    auto run = run_ledger(circuit, keys, c.t_mode, rng);
    csv = ledger_csv(run);
    Json out{{"command", "ledger"}, {"t_mode", t_mode_name(c.t_mode)}, {"seed", c.seed}};
    out.update(ledger_to_json(run));
    return out;
}

Json audit_json(const AuditReport &report) { return Json{{"ok", report.ok}, {"violations", report.violations}}; }

Json run_protocol_demo(const RunConfig &c, Rng &rng, int &code) {
    if (!c.replay.empty()) {
        std::ifstream in(c.replay);
        if (!in) {
            throw InputError("cannot read '" + c.replay + "'");
        }
        Transcript t = transcript_from_jsonl(in);
        AuditReport report = audit(t);
        code = report.ok ? 0 : 1;
        return Json{{"command", "protocol-demo"},
                    {"replay", c.replay},
                    {"messages", t.messages.size()},
                    {"audit", audit_json(report)},
                    {"evaluator_view", type_sequence(evaluator_view(t))}};
    }
    Circuit eval = c.circuit.empty() ? grover_eval_circuit({"000", "111"}, 3, 1) : load_circuit(c.circuit);
    Circuit prep = c.prep.empty() ? grover_prep(eval.qubit_count) : load_circuit(c.prep);
    if (prep.qubit_count < eval.qubit_count) {
        prep.qubit_count = eval.qubit_count;
    }
    KeySet keys = c.keys.empty() ? default_pad(eval.qubit_count) : load_keyset(c.keys);
    if (keys.size() < eval.qubit_count) {
        keys.pairs.resize(static_cast<std::size_t>(eval.qubit_count));
    }
    DelegationOptions options;
    options.shots = c.shots;
    options.mode = c.t_mode;
    options.noise_p = c.noise_p;
    auto r = run_delegated(prep, eval, keys, options, rng);
    if (!c.transcript.empty()) {
        std::ofstream t(c.transcript, std::ios::binary);
        if (!t) {
            throw InputError("cannot write '" + c.transcript + "'");
        }
        t << transcript_to_jsonl(r.transcript);
    }
    Json messages = Json::array();
    for (const auto &m : r.transcript.messages) {
        messages.push_back(message_to_json(m));
    }
    return Json{{"command", "protocol-demo"},
                {"t_mode", t_mode_name(c.t_mode)},
                {"seed", c.seed},
                {"shots", c.shots},
                {"keys", keyset_to_json(keys)["pairs"]},
                {"final_keys", keyset_to_json(r.final_keys)["pairs"]},
                {"t_assists", count_assists(r.transcript)},
                {"ciphertext", histogram_to_json(r.ciphertext)},
                {"decrypted", histogram_to_json(r.decrypted)},
                {"audit", audit_json(audit(r.transcript))},
                {"evaluator_view", type_sequence(evaluator_view(r.transcript))},
                {"transcript", std::move(messages)}};
}

Json run_kmeans_cmd(const RunConfig &c) {
    if (c.data.empty()) {
        throw UsageError("kmeans needs --data");
    }
    std::ifstream in(c.data);
    if (!in) {
        throw InputError("cannot read '" + c.data + "'");
    }
    auto points = read_dataset_csv(in);
    KMeansConfig config = c.config.empty() ? KMeansConfig{} : kmeans_config_from_json(read_json_file(c.config));
    Rng rng(config.seed);
    auto run = run_kmeans(points, config.k, config.tau, config.max_iters, config.pipeline, rng,
                          config.initial_centroids);
    Json out{{"command", "kmeans"},
             {"mode", pipeline_mode_name(config.pipeline.mode)},
             {"k", config.k},
             {"seed", config.seed},
             {"points", points.size()}};
    out.update(kmeans_run_to_json(run));
    return out;
}

void render_histogram(std::ostream &out, const std::string &name, const Json &h) {
    auto shots = h["shots"].get<std::uint64_t>();
    out << name << " (" << shots << " shots)\n";
    for (const auto &[bits, n] : h["counts"].items()) {
        double f = shots ? static_cast<double>(n.get<std::uint64_t>()) / static_cast<double>(shots) : 0.0;
        out << "  " << bits << "  " << std::setw(8) << n.get<std::uint64_t>() << "  " << std::fixed
            << std::setprecision(4) << f << "\n";
        out.unsetf(std::ios::fixed);
    }
}

void render_table(std::ostream &out, const Json &j) {
    for (const auto &[key, value] : j.items()) {
        if (value.is_object() && value.contains("counts")) {
            render_histogram(out, key, value);
        } else if (value.is_object() && key == "estimate") {
            for (const auto &[k2, v2] : value.items()) {
                out << k2 << ": " << v2.dump() << "\n";
            }
        } else if (value.is_array() && !value.empty() && value.front().is_object() && key != "transcript") {
            out << key << "\n";
            for (const auto &row : value) {
                out << " ";
                for (const auto &[k2, v2] : row.items()) {
                    out << " " << k2 << "=" << (v2.is_string() ? v2.get<std::string>() : v2.dump());
                }
                out << "\n";
            }
        } else if (key != "transcript" && key != "centroid_history" && key != "assignment_history") {
            out << key << ": " << value.dump() << "\n";
        }
    }
}

void emit(const RunConfig &c, const std::string &text, std::ostream &out) {
    if (c.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) {
        throw InputError("cannot write '" + c.output + "'");
    }
    f << text;
}

Json error_record(const std::string &kind, const std::string &message, int code) {
    return Json{{"error", Json{{"kind", kind}, {"message", message}, {"exit_code", code}}}};
}

}  // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string> &args, std::ostream &out) {
    RunConfig c;
    CLI::App app{"Encrypted quantum k-means toolkit: SwapTest, Grover search, minimum finding and key ledgers.",
                 "qhekm"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qhekm 0.1.0");

    auto *swap = app.add_subcommand("swaptest", "Estimate state similarity with the SwapTest");
    add_common(swap, c);
    add_crypto(swap, c);
    swap->add_option("--noise", c.noise_p, "Measurement bit-flip probability")->check(CLI::Range(0.0, 1.0));
    swap->add_option("--state-a", c.state_a, "Circuit JSON preparing register a (default |1>)");
    swap->add_option("--state-b", c.state_b, "Circuit JSON preparing register b (default |0>)");

    auto *grover = app.add_subcommand("grover", "Grover search for a marked set");
    add_common(grover, c);
    add_crypto(grover, c);
    grover->add_option("--noise", c.noise_p, "Measurement bit-flip probability")->check(CLI::Range(0.0, 1.0));
    grover->add_option("--marked", c.marked, "Comma-separated marked bitstrings, e.g. 000,111")->required();
    grover->add_option("--m", c.m, "Index qubits (default: width of the marked strings)");
    grover->add_option("--iterations", c.iterations, "Grover iterations (default: optimal for |marked|)");
    grover->add_flag("--emit-circuit", c.emit_circuit, "Print the circuit JSON instead of running it");

    auto *minfind = app.add_subcommand("minfind", "Minimum search over a value table");
    add_common(minfind, c);
    add_crypto(minfind, c);
    minfind->add_option("--table", c.table, "ValueTable JSON (default: the 8-entry example table)");
    minfind->add_option("--budget", c.budget, "Round budget (default ceil(sqrt(N)))")->check(CLI::NonNegativeNumber);
    minfind->add_option("--round-shots", c.round_shots, "Shots per Grover round")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    minfind->add_option("--start", c.start, "Initial index (default random)");

    auto *ledger = app.add_subcommand("ledger", "Propagate QOTP keys through a circuit");
    add_common(ledger, c, {"json", "table", "csv"});
    ledger->add_option("--keys", c.keys, "Initial key set: JSON file or inline '{1,1},{0,1}'");
    ledger->add_option("--t-mode", c.t_mode, "T-gate key handling: fresh, same-key or algebraic")
        ->transform(kTModeName)
        ->option_text("MODE [same-key]")
        ->default_str("same-key");
    ledger->add_option("--circuit", c.circuit, "Circuit JSON")->required();

    auto *kmeans = app.add_subcommand("kmeans", "Cluster a CSV dataset");
    kmeans->add_option("--data", c.data, "Dataset CSV, one point per row")->required();
    kmeans->add_option("--config", c.config, "Config JSON {k, tau, max_iters, mode, shots, levels, seed, ...}");
    kmeans->add_option("--output,-o", c.output, "Write the artifact here instead of stdout");
    kmeans->add_option("--format", c.format, "json or table")->check(CLI::IsMember({"json", "table"}));

    auto *demo = app.add_subcommand("protocol-demo", "Run and audit one delegated session, or audit a stored transcript");
    add_common(demo, c);
    demo->add_option("--keys", c.keys, "Initial key set: JSON file or inline");
    demo->add_option("--t-mode", c.t_mode, "T-gate key handling: fresh, same-key or algebraic")
        ->transform(kTModeName)
        ->option_text("MODE [same-key]")
        ->default_str("same-key");
    demo->add_option("--noise", c.noise_p, "Measurement bit-flip probability")->check(CLI::Range(0.0, 1.0));
    demo->add_option("--circuit", c.circuit, "Evaluation circuit JSON (default: one Grover iteration for 000,111)");
    demo->add_option("--prep", c.prep, "Client preparation circuit JSON (default: H on every qubit)");
    demo->add_option("--transcript", c.transcript, "Also write the transcript as JSON lines");
    demo->add_option("--replay", c.replay, "Audit a stored JSON-lines transcript instead of running");

    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    } catch (const CLI::CallForVersion &) {
        out << app.version() << "\n";
        return std::nullopt;
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }
    for (auto *sub : app.get_subcommands()) {
        c.subcommand = sub->get_name();
    }
    if (c.format == "csv" && c.subcommand != "ledger") {
        throw UsageError("--format csv is only available for ledger");
    }
    return c;
}

int dispatch(const RunConfig &config, std::ostream &out) {
    Rng rng(config.seed);
    Json result;
    std::string csv;
    int code = 0;
    if (config.subcommand == "swaptest") {
        result = run_swaptest(config, rng);
    } else if (config.subcommand == "grover") {
        result = run_grover(config, rng);
    } else if (config.subcommand == "minfind") {
        result = run_minfind(config, rng);
    } else if (config.subcommand == "ledger") {
        result = run_ledger_cmd(config, rng, csv);
    } else if (config.subcommand == "kmeans") {
        result = run_kmeans_cmd(config);
    } else if (config.subcommand == "protocol-demo") {
        result = run_protocol_demo(config, rng, code);
    } else {
        throw UsageError("unknown subcommand '" + config.subcommand + "'");
    }

    std::string text;
    if (config.format == "csv") {
        text = csv;
    } else if (config.format == "table") {
        std::ostringstream ss;
        render_table(ss, result);
        text = ss.str();
    } else {
        text = result.dump(2) + "\n";
    }
    emit(config, text, out);
    return code;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    try {
        auto config = parse_args(args, out);
        return config ? dispatch(*config, out) : 0;
    } catch (const UsageError &e) {
        err << error_record("usage", e.what(), 2).dump() << "\n";
        return 2;
    } catch (const InputError &e) {
        err << error_record("input", e.what(), 2).dump() << "\n";
        return 2;
    } catch (const ProtocolError &e) {
        err << error_record("protocol", e.what(), 1).dump() << "\n";
        return 1;
    } catch (const PipelineError &e) {
        err << error_record("pipeline", e.what(), 1).dump() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << error_record("runtime", e.what(), 1).dump() << "\n";
        return 1;
    }
}

}  // namespace qhekm::cli
