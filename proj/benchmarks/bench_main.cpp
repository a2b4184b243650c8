// Copyright 2026 The MDI-QCT Simulator Authors
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

#include "mdiqct/adversaries.hpp"
#include "mdiqct/analysis.hpp"

using namespace mdiqct;

static void BM_BellProjection(benchmark::State& state) {
    const HonestStates s(0.9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bell_projection_probs(s[StateLabel(0, 0)], s[StateLabel(1, 1)]));
    }
}
BENCHMARK(BM_BellProjection);

static void BM_NoisyGate(benchmark::State& state) {
    const HonestStates s(0.9);
    const BsmDevice dev = BsmDevice::from_channel(ChannelParams{10, 10, 0.2}, DetectorParams{0.1, 1e-4});
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dev.sample(s[StateLabel(0, 1)], s[StateLabel(1, 0)], rng));
    }
}
BENCHMARK(BM_NoisyGate);

static void BM_HonestRun(benchmark::State& state) {
    RunConfig c;
    c.channel = ChannelParams{static_cast<double>(state.range(0)), static_cast<double>(state.range(0)), 0.2};
    std::uint64_t i = 0;
    for (auto _ : state) {
        TrialStreams s = TrialStreams::derive(1, i++);
        benchmark::DoNotOptimize(run_honest(c, s));
    }
}
BENCHMARK(BM_HonestRun)->Arg(0)->Arg(10)->Arg(25);

static void BM_CoherentAttack(benchmark::State& state) {
    RunConfig c;
    c.detector = DetectorParams{1.0, 0.0};
    const auto alice = alice_coherent_attack(0.9, 0);
    std::uint64_t i = 0;
    for (auto _ : state) {
        TrialStreams s = TrialStreams::derive(2, i++);
        benchmark::DoNotOptimize(run_with_adversary(c, *alice, s));
    }
}
BENCHMARK(BM_CoherentAttack);

static void BM_FairPoint(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_fair_y(1e-12));
    }
}
BENCHMARK(BM_FairPoint);
BENCHMARK_MAIN();
