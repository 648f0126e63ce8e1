// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "swipt/experiment.hpp"
#include "swipt/validation.hpp"

using namespace swipt;

namespace {

PsCoefficients feasible_instance()
{
    for (std::uint64_t s = 1;; ++s) {
        PsCoefficients c = random_ps_coefficients(s);
        if (ps_grid_oracle_serial(c, 50))
            return c;
    }
}

void BM_GridOracleSerial(benchmark::State& state)
{
    const PsCoefficients c = feasible_instance();
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ps_grid_oracle_serial(c, res));
}

void BM_GridOracleParallel(benchmark::State& state)
{
    const PsCoefficients c = feasible_instance();
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ps_grid_oracle(c, res));
}

ExperimentConfig bench_config(int trials)
{
    ExperimentConfig cfg = preset("symmetric");
    cfg.pr_dbm = {20.0};
    cfg.trials = trials;
    return cfg;
}

void BM_ExperimentSerial(benchmark::State& state)
{
    const ExperimentConfig cfg = bench_config(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_experiment_serial(cfg));
}

void BM_ExperimentParallel(benchmark::State& state)
{
    const ExperimentConfig cfg = bench_config(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_experiment(cfg));
}

}  // namespace

BENCHMARK(BM_GridOracleSerial)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridOracleParallel)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentSerial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
