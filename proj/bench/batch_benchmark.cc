/*
 * Copyright 2026 The Fairtrade Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference vs OpenMP runner for the two batch sweeps.

#include <benchmark/benchmark.h>

#include "fairtrade/batch.h"
#include "fairtrade/group.h"
#include "fairtrade/rng.h"

namespace {

using fairtrade::batch::Execution;

const fairtrade::GroupParams& Params() {
  static const fairtrade::GroupParams params = [] {
    fairtrade::DeterministicRng rng(7, "bench/params");
    return fairtrade::SetupParams({256, 256, 256}, rng);
  }();
  return params;
}

const fairtrade::Bytes& Goods() {
  static const fairtrade::Bytes goods = fairtrade::DeterministicRng(7, "bench/goods").RandomBytes(4096);
  return goods;
}

void BM_CorrectnessTrials(benchmark::State& state, Execution exec) {
  const auto trials = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto report = fairtrade::batch::RunCorrectnessTrials(Params(), trials, 11, exec);
    benchmark::DoNotOptimize(report.fingerprint);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FairnessMatrix(benchmark::State& state, Execution exec) {
  const auto seeds = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto report = fairtrade::batch::RunFairnessMatrix(Params(), Goods(), seeds, 11, exec);
    benchmark::DoNotOptimize(report.fingerprint);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 9);
}

BENCHMARK_CAPTURE(BM_CorrectnessTrials, serial, Execution::kSerial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_CorrectnessTrials, parallel, Execution::kParallel)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FairnessMatrix, serial, Execution::kSerial)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FairnessMatrix, parallel, Execution::kParallel)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
