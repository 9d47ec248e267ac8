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

#include <benchmark/benchmark.h>

#include "qhekm/groveropt.h"
#include "qhekm/keyledger.h"
#include "qhekm/kmeans.h"
#include "qhekm/protocol.h"
#include "qhekm/swaptest.h"

using namespace qhekm;

namespace {

Circuit layered_circuit(int n, int layers) {
    Circuit c(n);
    for (int l = 0; l < layers; l++) {
        for (int q = 0; q < n; q++) {
            c.add(GateKind::H, {q});
            c.add(GateKind::T, {q});
        }
        for (int q = 0; q + 1 < n; q++) {
            c.add(GateKind::CNOT, {q, q + 1});
        }
    }
    return c;
}

void BM_RunCircuit(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    Circuit c = layered_circuit(n, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_circuit(PureState(n), c));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.ops.size()));
}
BENCHMARK(BM_RunCircuit)->DenseRange(4, 16, 4);

void BM_SampleShots(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    PureState s = run_circuit(PureState(n), layered_circuit(n, 2));
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_shots(s, 8192, rng));
    }
}
BENCHMARK(BM_SampleShots)->Arg(3)->Arg(10);

void BM_RunLedger(benchmark::State &state) {
    Circuit c = decompose_circuit(layered_circuit(8, 8));
    KeySet keys = KeySet::zeros(8);
    Rng rng(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_ledger(c, keys, TGateMode::algebraic, rng));
    }
}
BENCHMARK(BM_RunLedger);

void BM_EncryptedSwapTest(benchmark::State &state) {
    Circuit a(1), b(1);
    a.add(GateKind::X, {0});
    Rng rng(2);
    auto mode = static_cast<TGateMode>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_encrypted_swaptest(a, b, parse_keyset("{1,1}"), 8192, mode, rng));
    }
}
BENCHMARK(BM_EncryptedSwapTest)
    ->Arg(static_cast<int>(TGateMode::trusted_fresh_key))
    ->Arg(static_cast<int>(TGateMode::algebraic));

void BM_EncryptedGrover(benchmark::State &state) {
    int m = static_cast<int>(state.range(0));
    MarkedSet marked{index_to_bits(0, m), index_to_bits((std::uint64_t{1} << m) - 1, m)};
    Rng rng(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            encrypted_grover(marked, m, random_keyset(m, rng), 1024, TGateMode::trusted_same_key, rng));
    }
}
BENCHMARK(BM_EncryptedGrover)->DenseRange(3, 6);

void BM_DurrHoyer(benchmark::State &state) {
    int m = static_cast<int>(state.range(0));
    Rng rng(4);
    ValueTable t;
    t.index_bits = m;
    t.max_value = 63;
    std::uniform_int_distribution<std::int64_t> v(0, 63);
    for (std::uint64_t i = 0; i < t.size(); i++) {
        t.values[index_to_bits(i, m)] = v(rng);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(durr_hoyer_min(t, 0, 8, rng));
    }
}
BENCHMARK(BM_DurrHoyer)->DenseRange(3, 7, 2);

void BM_AssignStep(benchmark::State &state) {
    auto mode = static_cast<PipelineMode>(state.range(0));
    Rng rng(5);
    std::normal_distribution<double> g(1.0, 0.5);
    std::vector<DataPoint> points(32, DataPoint(4));
    for (auto &p : points) {
        for (double &x : p) {
            x = g(rng);
        }
    }
    std::vector<DataPoint> centroids(points.begin(), points.begin() + 4);
    PipelineConfig config;
    config.mode = mode;
    config.shots = 1024;
    for (auto _ : state) {
        benchmark::DoNotOptimize(assign_step(points, centroids, config, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(points.size()));
}
BENCHMARK(BM_AssignStep)
    ->Arg(static_cast<int>(PipelineMode::exact))
    ->Arg(static_cast<int>(PipelineMode::sampled))
    ->Arg(static_cast<int>(PipelineMode::encrypted))
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
