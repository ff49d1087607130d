// Copyright 2026 The sfcorr Authors
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

#include "sfcorr/echo.hpp"
#include "sfcorr/moments.hpp"
#include "sfcorr/permtrace.hpp"
#include "sfcorr/sampler.hpp"

using namespace sfcorr;

namespace {

const RngStream kStream{2026, 0};

}  // namespace

static void BM_self_fidelity(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    auto u = haar_unitary(d, kStream, 1);
    auto psi = haar_state(d, kStream, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(self_fidelity(u, psi));
    }
}
BENCHMARK(BM_self_fidelity)->RangeMultiplier(2)->Range(2, 64);

static void BM_haar_unitary(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    std::uint64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(haar_unitary(d, kStream, i++));
    }
}
BENCHMARK(BM_haar_unitary)->RangeMultiplier(2)->Range(2, 64);

static void BM_exact_stats(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    auto u1 = haar_unitary(d, kStream, 3);
    auto u2 = haar_unitary(d, kStream, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_stats(u1, u2));
    }
}
BENCHMARK(BM_exact_stats)->RangeMultiplier(2)->Range(2, 64);

static void BM_exact_stats_permsum(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    auto u1 = haar_unitary(d, kStream, 3);
    auto u2 = haar_unitary(d, kStream, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(exact_stats_permsum(u1, u2));
    }
}
BENCHMARK(BM_exact_stats_permsum)->DenseRange(2, 6);

static void BM_moment_contraction(benchmark::State &state) {
    const int k = static_cast<int>(state.range(0));
    auto u = haar_unitary(3, kStream, 5);
    std::vector<ComplexMatrix> ops(static_cast<size_t>(k), u.base());
    for (auto _ : state) {
        benchmark::DoNotOptimize(moment_contraction(ops, 3));
    }
}
BENCHMARK(BM_moment_contraction)->DenseRange(2, 6);

static void BM_mc_stats(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    const std::int64_t n = 20000;
    auto u1 = haar_unitary(d, kStream, 6);
    auto u2 = haar_unitary(d, kStream, 7);
    auto ens = EnsembleSpec::haar(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc_stats(u1, u2, ens, kStream));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_mc_stats)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_variance_limit_pcc_exact(benchmark::State &state) {
    const int d = static_cast<int>(state.range(0));
    auto a = haar_unitary(d, kStream, 8).mat();
    auto b = haar_unitary(d, kStream, 9).mat();
    auto h1 = HermitianMatrix::from(ComplexMatrix(a + a.adjoint()));
    auto h2 = HermitianMatrix::from(ComplexMatrix(b + b.adjoint()));
    for (auto _ : state) {
        benchmark::DoNotOptimize(echo::variance_limit_pcc_exact(h1, h2));
    }
}
BENCHMARK(BM_variance_limit_pcc_exact)->DenseRange(2, 6, 2);

BENCHMARK_MAIN();
