// Copyright 2026 The qfilter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qfilter/ensemble.hpp"
#include "qfilter/reference_filters.hpp"
#include "qfilter/scenario.hpp"
#include "qfilter/validation.hpp"

namespace {

using namespace qfilter;

// Closed-form field evaluation for each input kind (0 vacuum, 1 photon, 2 cat)
// and detection scheme (0 homodyne, 1 counting).
void BM_ClosedFormFields(benchmark::State& state) {
  Rng rng(1);
  const auto kind = state.range(0);
  const auto d = state.range(1) == 0 ? Detection::homodyne : Detection::photon_counting;
  const RandomCase c = kind == 0   ? random_vacuum_case(rng)
                       : kind == 1 ? random_photon_case(rng)
                                   : random_cat_case(rng, 2);
  const SpecializedFilters f;
  FieldDecomposition out;
  for (auto _ : state) {
    if (kind == 0) {
      d == Detection::homodyne ? f.vacuum_hd(c.state, c.system, out) : f.vacuum_pd(c.state, c.system, out);
    } else if (kind == 1) {
      d == Detection::homodyne ? f.photon_hd(c.state, c.field.xi, c.system, out)
                               : f.photon_pd(c.state, c.field.xi, c.system, out);
    } else {
      d == Detection::homodyne ? f.cat_hd(c.state, c.field.alpha, c.system, out)
                               : f.cat_pd(c.state, c.field.alpha, c.system, out);
    }
    benchmark::DoNotOptimize(out.observation_rate);
  }
}
BENCHMARK(BM_ClosedFormFields)->ArgsProduct({{0, 1, 2}, {0, 1}});

// The generic operator evaluation the closed forms are checked against.
void BM_ReferenceFields(benchmark::State& state) {
  Rng rng(1);
  const RandomCase c = state.range(0) == 0   ? random_vacuum_case(rng)
                       : state.range(0) == 1 ? random_photon_case(rng)
                                             : random_cat_case(rng, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference_fields(c.system, c.state, c.field, Detection::homodyne));
  }
}
BENCHMARK(BM_ReferenceFields)->DenseRange(0, 2);

void BM_Trajectory(benchmark::State& state) {
  const std::string name = builtin_scenario_names()[static_cast<std::size_t>(state.range(0))];
  const Scenario s = builtin_scenario(name);
  const QubitFilter model = s.filter();
  const BlockState x0 = s.initial_state();
  std::uint64_t seed = 0;
  for (auto _ : state) {
    IntegratorConfig c = s.integrator;
    c.seed = ++seed;
    benchmark::DoNotOptimize(integrate_sme(model, x0, c).rows());
  }
  state.SetLabel(name);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.integrator.steps()));
}
BENCHMARK(BM_Trajectory)->DenseRange(0, 5)->Unit(benchmark::kMillisecond);

void BM_MasterEquation(benchmark::State& state) {
  const Scenario s = builtin_scenario("fig5_cat_hd");
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_me(s).rows());
  }
}
BENCHMARK(BM_MasterEquation)->Unit(benchmark::kMillisecond);

void BM_Ensemble(benchmark::State& state) {
  Scenario s = builtin_scenario("fig2_vacuum_hd");
  s.n_trajectories = 256;
  EnsembleOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_ensemble(s, opt).completed);
  }
  state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(BM_Ensemble)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
