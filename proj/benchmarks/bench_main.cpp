// Copyright 2026 The Qutrit Control Authors
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

#include <random>

#include "qutrit/benchmarking.hpp"
#include "qutrit/clifford.hpp"
#include "qutrit/hgate.hpp"
#include "qutrit/propagator.hpp"
#include "qutrit/xgate.hpp"

namespace qutrit {
namespace {

void BM_ExpmHermitian(benchmark::State &state) {
    Matrix h = lambda_hamiltonian(1.3, 0.7, -0.4);
    ComplexHermitian herm(h);
    for (auto _ : state) benchmark::DoNotOptimize(expm_hermitian(herm, 0.05));
}
BENCHMARK(BM_ExpmHermitian);

void BM_PropagatorConstant(benchmark::State &state) {
    for (auto _ : state) benchmark::DoNotOptimize(propagator_constant(2.5906, 2.5906, 1.7050));
}
BENCHMARK(BM_PropagatorConstant);

void BM_EvolveXGate(benchmark::State &state) {
    PulseSchedule s = rabi_from_invariant(make_lr_design(XKind::X, 35.0), 0.05);
    SimConfig cfg;
    cfg.method = static_cast<Integrator>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(evolve(s, {}, cfg));
}
BENCHMARK(BM_EvolveXGate)
    ->Arg(static_cast<int>(Integrator::piecewise_expm))
    ->Arg(static_cast<int>(Integrator::magnus4))
    ->Arg(static_cast<int>(Integrator::rk4));

void BM_CliffordProductLookup(benchmark::State &state) {
    const auto &g = CliffordGroup::instance();
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<size_t> pick(0, g.size() - 1);
    size_t acc = g.identity_index();
    for (auto _ : state) {
        acc = g.then(acc, pick(rng));
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_CliffordProductLookup);

void BM_CliffordFind(benchmark::State &state) {
    const auto &g = CliffordGroup::instance();
    Matrix u = g[137].canonical * cplx(0.6, 0.8);
    for (auto _ : state) benchmark::DoNotOptimize(g.find(u));
}
BENCHMARK(BM_CliffordFind);

void BM_RunRbDepolarizing(benchmark::State &state) {
    RBConfig cfg;
    cfg.noise = DepolarizingNoise{0.9847};
    for (auto _ : state) benchmark::DoNotOptimize(run_rb(cfg));
}
BENCHMARK(BM_RunRbDepolarizing)->Unit(benchmark::kMillisecond);

void BM_RunRbPulseLevel(benchmark::State &state) {
    RBConfig cfg;
    cfg.noise = parse_noise("pulse:0.01,0,0,0");
    cfg.n_sequences = 5;
    for (auto _ : state) benchmark::DoNotOptimize(run_rb(cfg));
}
BENCHMARK(BM_RunRbPulseLevel)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace qutrit

BENCHMARK_MAIN();
