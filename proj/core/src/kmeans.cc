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

#include "qhekm/kmeans.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qhekm/qotp.h"
#include "qhekm/swaptest.h"

namespace qhekm {

std::string_view pipeline_mode_name(PipelineMode mode) {
    switch (mode) {
        case PipelineMode::exact:
            return "exact";
        case PipelineMode::sampled:
            return "sampled";
        case PipelineMode::encrypted:
            return "encrypted";
    }
    return "?";
}

PipelineMode parse_pipeline_mode(std::string_view name) {
    if (name == "exact") {
        return PipelineMode::exact;
    }
    if (name == "sampled") {
        return PipelineMode::sampled;
    }
    if (name == "encrypted") {
        return PipelineMode::encrypted;
    }
    throw InputError("unknown pipeline mode '" + std::string(name) + "' (expected exact, sampled or encrypted)");
}

namespace {

double norm(const DataPoint &p) {
    double s = 0;
    for (double x : p) {
        s += x * x;
    }
    return std::sqrt(s);
}

bool encodable(const DataPoint &p) {
    return !p.empty() && std::all_of(p.begin(), p.end(), [](double x) { return std::isfinite(x); }) && norm(p) > 0;
}

int ceil_log2(std::size_t n) {
    int bits = 0;
    while ((std::size_t{1} << bits) < n) {
        bits++;
    }
    return bits;
}

}  // namespace

Circuit encode_point(const DataPoint &point) {
    if (!encodable(point)) {
        throw InputError("point cannot be amplitude-encoded: it must be non-empty, finite and non-zero");
    }
    int q = std::max(1, ceil_log2(point.size()));
    std::size_t dim = std::size_t{1} << q;
    std::vector<double> v(dim, 0.0);
    double r = norm(point);
    for (std::size_t i = 0; i < point.size(); i++) {
        v[i] = point[i] / r;
    }

    Circuit out(q);
    for (int level = 0; level < q; level++) {
        std::size_t block = dim >> level;
        std::size_t half = block / 2;
        for (std::size_t prefix = 0; prefix < (std::size_t{1} << level); prefix++) {
            std::size_t start = prefix * block;
            double theta;
            if (level == q - 1) {
                // Leaf level carries the signs.
                double v0 = v[start], v1 = v[start + 1];
                if (v0 == 0 && v1 == 0) {
                    continue;
                }
                theta = 2 * std::atan2(v1, v0);
            } else {
                double left = 0, right = 0;
                for (std::size_t i = 0; i < half; i++) {
                    left += v[start + i] * v[start + i];
                    right += v[start + half + i] * v[start + half + i];
                }
                if (left == 0 && right == 0) {
                    continue;
                }
                theta = 2 * std::atan2(std::sqrt(right), std::sqrt(left));
            }
            if (theta == 0) {
                continue;
            }
            if (level == 0) {
                out.add(GateKind::RY, {0}, theta);
                continue;
            }
            std::vector<int> flips;
            std::vector<int> targets;
            for (int c = 0; c < level; c++) {
                if (!((prefix >> (level - 1 - c)) & 1)) {
                    flips.push_back(c);
                }
                targets.push_back(c);
            }
            targets.push_back(level);
            for (int c : flips) {
                out.add(GateKind::X, {c});
            }
            out.add(GateKind::CRY, targets, theta);
            for (int c : flips) {
                out.add(GateKind::X, {c});
            }
        }
    }
    return out;
}

PureState encode_state(const DataPoint &point) {
    Circuit c = encode_point(point);
    return run_circuit(PureState(c.qubit_count), c);
}

std::int64_t quantize_distance(double distance, int levels) {
    if (levels < 2) {
        throw InputError("quantization needs at least two levels");
    }
    double d = std::clamp(distance, 0.0, 1.0);
    return std::min<std::int64_t>(levels - 1, static_cast<std::int64_t>(std::floor(d * levels)));
}

ValueTable distance_table(const std::vector<double> &distances, int levels) {
    if (distances.empty()) {
        throw InputError("distance table needs at least one entry");
    }
    ValueTable table;
    table.index_bits = std::max(1, ceil_log2(distances.size()));
    table.max_value = levels;
    for (std::size_t i = 0; i < table.size(); i++) {
        table.values[index_to_bits(i, table.index_bits)] =
            i < distances.size() ? quantize_distance(distances[i], levels) : levels;
    }
    return table;
}

double cosine_similarity_sq(const DataPoint &a, const DataPoint &b) {
    if (a.size() != b.size()) {
        throw InputError("vectors differ in dimension");
    }
    double na = norm(a), nb = norm(b);
    if (na == 0 || nb == 0) {
        throw InputError("cosine similarity of a zero vector");
    }
    double dot = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        dot += (a[i] / na) * (b[i] / nb);
    }
    return std::min(1.0, dot * dot);
}

namespace {

void check_points(const std::vector<DataPoint> &points, std::size_t dim) {
    for (const auto &p : points) {
        if (p.size() != dim) {
            throw InputError("points differ in dimension");
        }
        if (!encodable(p)) {
            throw InputError("every data point must be finite and non-zero");
        }
    }
}

int lowest_distance(const std::vector<double> &distances, const std::vector<bool> &defined) {
    int best = -1;
    for (std::size_t j = 0; j < distances.size(); j++) {
        if (defined[j] && (best < 0 || distances[j] < distances[best])) {
            best = static_cast<int>(j);
        }
    }
    if (best < 0) {
        throw PipelineError("no centroid can be compared with the point (all centroids are zero vectors)");
    }
    return best;
}

int quantum_argmin(const std::vector<double> &distances, const std::vector<bool> &defined,
                   const PipelineConfig &config, Rng &rng) {
    std::vector<double> table_input = distances;
    std::vector<std::size_t> real;
    for (std::size_t j = 0; j < distances.size(); j++) {
        if (defined[j]) {
            real.push_back(j);
        } else {
            table_input[j] = 2.0;  // quantizes to the top level; replaced below
        }
    }
    if (real.empty()) {
        throw PipelineError("no centroid can be compared with the point (all centroids are zero vectors)");
    }
    ValueTable table = distance_table(table_input, config.levels);
    for (std::size_t j = 0; j < distances.size(); j++) {
        if (!defined[j]) {
            table.values[index_to_bits(j, table.index_bits)] = config.levels;
        }
    }
    if (table.size() == 1) {
        return 0;
    }

    MinFindOptions options;
    options.shots_per_round = config.minfind_shots;
    std::uniform_int_distribution<std::size_t> pick(0, real.size() - 1);
    options.start = index_to_bits(real[pick(rng)], table.index_bits);
    if (config.mode == PipelineMode::encrypted) {
        TGateMode t_mode = config.t_mode;
        options.search = [t_mode](const MarkedSet &marked, int m, int iterations, std::uint64_t shots, Rng &r) {
            KeySet keys = random_keyset(m, r);
            return encrypted_grover(marked, m, iterations, keys, shots, t_mode, r).decrypted;
        };
    }
    auto found = durr_hoyer_min(table, options, rng);

    // Several centroids can share the minimum level; prefer the smaller measured distance.
    int best = -1;
    for (std::size_t j : real) {
        if (table.at(index_to_bits(j, table.index_bits)) == found.b_min &&
            (best < 0 || distances[j] < distances[best])) {
            best = static_cast<int>(j);
        }
    }
    return best >= 0 ? best : static_cast<int>(bits_to_index(found.a_min));
}

}  // namespace

std::vector<int> assign_step(const std::vector<DataPoint> &points, const std::vector<DataPoint> &centroids,
                             const PipelineConfig &config, Rng &rng) {
    if (centroids.empty()) {
        throw InputError("need at least one centroid");
    }
    if (points.empty()) {
        return {};
    }
    std::size_t dim = points.front().size();
    check_points(points, dim);
    std::size_t k = centroids.size();
    std::vector<bool> defined(k);
    std::vector<PureState> centroid_states;
    std::vector<Circuit> centroid_preps;
    for (std::size_t j = 0; j < k; j++) {
        if (centroids[j].size() != dim) {
            throw InputError("centroid dimension differs from the data");
        }
        defined[j] = encodable(centroids[j]);
        centroid_preps.push_back(defined[j] ? encode_point(centroids[j]) : Circuit(1));
        centroid_states.push_back(defined[j] ? encode_state(centroids[j]) : PureState(1));
    }

    // Independent stream per point so results do not depend on evaluation order.
    std::uint64_t base = rng();
    std::vector<int> out(points.size());
    for (std::size_t i = 0; i < points.size(); i++) {
        std::seed_seq seq{base, static_cast<std::uint64_t>(i)};
        Rng point_rng(seq);
        Circuit prep = encode_point(points[i]);
        PureState state = run_circuit(PureState(prep.qubit_count), prep);
        std::vector<double> distances(k, 1.0);
        for (std::size_t j = 0; j < k; j++) {
            if (!defined[j]) {
                continue;
            }
            double similarity = 0;
            switch (config.mode) {
                case PipelineMode::exact:
                    similarity = overlap_sq(state, centroid_states[j]);
                    break;
                case PipelineMode::sampled:
                    similarity = similarity_plain(state, centroid_states[j], config.shots, point_rng).similarity;
                    break;
                case PipelineMode::encrypted: {
                    KeySet keys = random_keyset(prep.qubit_count, point_rng);
                    similarity = similarity_encrypted(prep, centroid_preps[j], keys, config.shots, config.t_mode,
                                                      point_rng)
                                     .similarity;
                    break;
                }
            }
            distances[j] = 1.0 - similarity;
        }
        out[i] = config.mode == PipelineMode::exact ? lowest_distance(distances, defined)
                                                    : quantum_argmin(distances, defined, config, point_rng);
    }
    return out;
}

std::vector<DataPoint> update_centroids(const std::vector<DataPoint> &points, const std::vector<int> &assignments,
                                        const std::vector<DataPoint> &previous) {
    if (points.size() != assignments.size()) {
        throw InputError("one assignment per point required");
    }
    std::size_t k = previous.size();
    std::vector<DataPoint> sums = previous;
    std::vector<std::size_t> counts(k, 0);
    for (auto &s : sums) {
        std::fill(s.begin(), s.end(), 0.0);
    }
    for (std::size_t i = 0; i < points.size(); i++) {
        int j = assignments[i];
        if (j < 0 || static_cast<std::size_t>(j) >= k) {
            throw InputError("assignment index out of range");
        }
        if (points[i].size() != sums[j].size()) {
            throw InputError("point dimension differs from centroid dimension");
        }
        for (std::size_t d = 0; d < points[i].size(); d++) {
            sums[j][d] += points[i][d];
        }
        counts[j]++;
    }
    for (std::size_t j = 0; j < k; j++) {
        if (counts[j] == 0) {
            sums[j] = previous[j];
            continue;
        }
        for (double &x : sums[j]) {
            x /= static_cast<double>(counts[j]);
        }
    }
    return sums;
}

bool has_converged(const std::vector<DataPoint> &previous, const std::vector<DataPoint> &next, double tau) {
    if (previous.size() != next.size()) {
        throw InputError("centroid sets differ in size");
    }
    for (std::size_t j = 0; j < previous.size(); j++) {
        if (previous[j].size() != next[j].size()) {
            throw InputError("centroids differ in dimension");
        }
        double s = 0;
        for (std::size_t d = 0; d < previous[j].size(); d++) {
            double diff = previous[j][d] - next[j][d];
            s += diff * diff;
        }
        if (!(std::sqrt(s) < tau)) {
            return false;
        }
    }
    return true;
}

std::vector<DataPoint> initial_centroids(const std::vector<DataPoint> &points, int k, Rng &rng) {
    if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
        throw InputError("need 1 <= k <= number of points");
    }
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); i++) {
        std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
        std::swap(order[i], order[pick(rng)]);
    }
    std::vector<DataPoint> out;
    for (int i = 0; i < k; i++) {
        out.push_back(points[order[i]]);
    }
    return out;
}

namespace {

void check_run(const std::vector<DataPoint> &points, int k, double tau, int max_iters,
               const std::vector<DataPoint> &initial) {
    if (points.empty()) {
        throw InputError("no data points");
    }
    if (k < 1 || static_cast<std::size_t>(k) > points.size()) {
        throw InputError("need 1 <= k <= number of points");
    }
    if (!(tau > 0)) {
        throw InputError("convergence threshold tau must be positive");
    }
    if (max_iters < 1) {
        throw InputError("max_iters must be at least 1");
    }
    check_points(points, points.front().size());
    if (initial.size() != static_cast<std::size_t>(k)) {
        throw InputError("expected " + std::to_string(k) + " initial centroids, got " + std::to_string(initial.size()));
    }
}

template <typename Assign>
KMeansRun lloyd(const std::vector<DataPoint> &points, double tau, int max_iters, std::vector<DataPoint> centroids,
                Assign assign) {
    KMeansRun run;
    run.state.tau = tau;
    run.centroid_history.push_back(centroids);
    for (int s = 1; s <= max_iters; s++) {
        auto assignments = assign(centroids);
        auto next = update_centroids(points, assignments, centroids);
        run.assignment_history.push_back(assignments);
        run.centroid_history.push_back(next);
        run.state.assignments = std::move(assignments);
        run.state.iteration = s;
        bool done = has_converged(centroids, next, tau);
        centroids = std::move(next);
        if (done) {
            run.converged = true;
            break;
        }
    }
    run.state.centroids = std::move(centroids);
    return run;
}

}  // namespace

KMeansRun run_kmeans(const std::vector<DataPoint> &points, int k, double tau, int max_iters,
                     const PipelineConfig &config, Rng &rng, std::optional<std::vector<DataPoint>> initial) {
    std::vector<DataPoint> start =
        initial ? *initial : (k >= 1 && static_cast<std::size_t>(k) <= points.size() ? initial_centroids(points, k, rng)
                                                                                        : std::vector<DataPoint>{});
    check_run(points, k, tau, max_iters, start);
    return lloyd(points, tau, max_iters, std::move(start),
                 [&](const std::vector<DataPoint> &c) { return assign_step(points, c, config, rng); });
}

KMeansRun classical_kmeans(const std::vector<DataPoint> &points, int k, double tau, int max_iters,
                           const std::vector<DataPoint> &initial) {
    check_run(points, k, tau, max_iters, initial);
    return lloyd(points, tau, max_iters, initial, [&](const std::vector<DataPoint> &centroids) {
        std::vector<int> out(points.size());
        std::vector<bool> defined(centroids.size());
        for (std::size_t j = 0; j < centroids.size(); j++) {
            defined[j] = encodable(centroids[j]);
        }
        for (std::size_t i = 0; i < points.size(); i++) {
            std::vector<double> distances(centroids.size(), 1.0);
            for (std::size_t j = 0; j < centroids.size(); j++) {
                if (defined[j]) {
                    distances[j] = 1.0 - cosine_similarity_sq(points[i], centroids[j]);
                }
            }
            out[i] = lowest_distance(distances, defined);
        }
        return out;
    });
}

}  // namespace qhekm
