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

#ifndef QHEKM_TOOLS_CLI_H
#define QHEKM_TOOLS_CLI_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhekm/keyledger.h"

namespace qhekm::cli {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string subcommand;
    std::uint64_t shots = 8192;
    std::uint64_t seed = 0;
    double noise_p = 0.0;
    bool encrypted = false;
    std::string keys;  // file or inline; empty means the subcommand default
    TGateMode t_mode = TGateMode::trusted_same_key;
    std::string output;  // empty means stdout
    std::string format = "json";

    // swaptest
    std::string state_a;
    std::string state_b;
    bool analytic = false;
    // grover
    std::string marked;
    int m = 0;
    std::optional<int> iterations;
    bool emit_circuit = false;
    // minfind
    std::string table;
    int budget = 0;
    std::uint64_t round_shots = 8;
    std::string start;
    // ledger / protocol-demo
    std::string circuit;
    std::string prep;
    std::string transcript;
    std::string replay;
    // kmeans
    std::string data;
    std::string config;
};

/// Parses argv (argv[0] is the program name). Throws UsageError.
/// Returns nullopt after printing help or version text.
std::optional<RunConfig> parse_args(const std::vector<std::string> &args, std::ostream &out);

/// Runs one job and writes its artifact. Library exceptions propagate.
int dispatch(const RunConfig &config, std::ostream &out);

/// parse_args + dispatch with error mapping: 0 success, 1 runtime failure,
/// 2 usage error. Failures print a JSON error record on `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qhekm::cli

#endif
