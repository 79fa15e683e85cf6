// Copyright 2026 The ErasureKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <benchmark/benchmark.h>

#include "erasurekit/erasure.hpp"
#include "erasurekit/optimizer.hpp"

namespace {

using namespace erasurekit;

struct Fixture {
  KrausChannel channel;
  ProbeMeasurement meas;
  CMatrix rho;
};

// state.range(0) is the system dimension, K = d^2.
Fixture make_fixture(int d) {
  std::mt19937_64 rng(42);
  KrausChannel ch = random_channel(d, d * d, rng);
  ProbeMeasurement meas(haar_isometry(d * d, d * d, rng));
  return {std::move(ch), std::move(meas), random_density(d, d, rng)};
}

void BM_PolarDecompose(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const CMatrix a = ginibre(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(polar_decompose(a));
}
BENCHMARK(BM_PolarDecompose)->Arg(2)->Arg(4)->Arg(8);

void BM_EntanglementFidelity(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(entanglement_fidelity(f.channel, f.rho));
}
BENCHMARK(BM_EntanglementFidelity)->Arg(2)->Arg(3)->Arg(4);

void BM_AssistedFidelity(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assisted_fidelity(f.channel, f.rho, f.meas));
}
BENCHMARK(BM_AssistedFidelity)->Arg(2)->Arg(3)->Arg(4);

void BM_VerifyDirect(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  const Ensemble e = random_ensemble(f.rho, 4, 7);
  for (auto _ : state) benchmark::DoNotOptimize(verify_direct(f.channel, f.rho, e, f.meas));
}
BENCHMARK(BM_VerifyDirect)->Arg(2)->Arg(3);

void BM_VerifyConverse(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Fixture f = make_fixture(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_converse(f.channel, f.rho, f.meas, d * d, 3));
  }
}
BENCHMARK(BM_VerifyConverse)->Arg(2)->Arg(3);

void BM_Optimize(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Fixture f = make_fixture(d);
  const OptimizerConfig config{.restarts = 8, .seed = 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(optimize_erasure(f.channel, maximally_mixed(d), d * d, config));
  }
}
BENCHMARK(BM_Optimize)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
