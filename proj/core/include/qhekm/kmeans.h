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

#ifndef QHEKM_KMEANS_H
#define QHEKM_KMEANS_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "qhekm/groveropt.h"
#include "qhekm/keyledger.h"
#include "qhekm/statevector.h"

namespace qhekm {

using DataPoint = std::vector<double>;

enum class PipelineMode {
    /// Analytic overlaps and an exact argmin; no sampling, no Grover.
    exact,
    /// Sampled SwapTests, quantized distance table, Grover minimum finding.
    sampled,
    /// As sampled, with every SwapTest and Grover round delegated on ciphertext.
    encrypted,
};

std::string_view pipeline_mode_name(PipelineMode mode);
PipelineMode parse_pipeline_mode(std::string_view name);

struct PipelineConfig {
    PipelineMode mode = PipelineMode::exact;
    std::uint64_t shots = 8192;     // per SwapTest
    int levels = 8;                 // distance quantization levels L
    std::uint64_t minfind_shots = 8;  // per Grover round
    TGateMode t_mode = TGateMode::trusted_fresh_key;
};

struct ClusteringState {
    std::vector<DataPoint> centroids;
    std::vector<int> assignments;
    int iteration = 0;
    double tau = 0;
};

struct KMeansRun {
    ClusteringState state;
    std::vector<std::vector<DataPoint>> centroid_history;  // entry 0 is the initial set
    std::vector<std::vector<int>> assignment_history;      // one per assignment round
    bool converged = false;
};

/// Amplitude encoding of the L2-normalized vector, zero-padded to a power of
/// two (at least one qubit). Built from RY and multi-controlled RY rotations.
Circuit encode_point(const DataPoint &point);
PureState encode_state(const DataPoint &point);

/// Index of `distance` in [0, 1] among `levels` equal bins.
std::int64_t quantize_distance(double distance, int levels);

/// Distance table over ceil(log2 k) index bits; padding entries hold `levels`.
ValueTable distance_table(const std::vector<double> &distances, int levels);

/// Squared cosine similarity of two vectors; the classical counterpart of the SwapTest overlap.
double cosine_similarity_sq(const DataPoint &a, const DataPoint &b);

std::vector<int> assign_step(const std::vector<DataPoint> &points, const std::vector<DataPoint> &centroids,
                             const PipelineConfig &config, Rng &rng);

/// Arithmetic mean per cluster; a cluster with no points keeps its previous centroid.
std::vector<DataPoint> update_centroids(const std::vector<DataPoint> &points, const std::vector<int> &assignments,
                                        const std::vector<DataPoint> &previous);

/// True iff every centroid moved by less than tau (Euclidean).
bool has_converged(const std::vector<DataPoint> &previous, const std::vector<DataPoint> &next, double tau);

/// k distinct points drawn without replacement.
std::vector<DataPoint> initial_centroids(const std::vector<DataPoint> &points, int k, Rng &rng);

KMeansRun run_kmeans(const std::vector<DataPoint> &points, int k, double tau, int max_iters,
                     const PipelineConfig &config, Rng &rng,
                     std::optional<std::vector<DataPoint>> initial = std::nullopt);

/// Lloyd iterations under the same cosine metric, tie-breaking and empty-cluster rule.
KMeansRun classical_kmeans(const std::vector<DataPoint> &points, int k, double tau, int max_iters,
                           const std::vector<DataPoint> &initial);

}  // namespace qhekm

#endif
