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

#ifndef QHEKM_ERRORS_H
#define QHEKM_ERRORS_H

#include <stdexcept>
#include <string>

namespace qhekm {

/// Invalid arguments: bad indices, length mismatches, out-of-range parameters.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A delegated session violated message ordering or sender legality.
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The clustering pipeline could not produce a valid assignment.
struct PipelineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qhekm

#endif
