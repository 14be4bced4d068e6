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

// Trajectory ensembles, their statistics and the comparison against the
// unconditioned (ME) solution on the same grid.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qfilter/scenario.hpp"
#include "qfilter/sde_engine.hpp"

namespace qfilter {

struct SeriesStats {
  std::vector<double> mean;
  std::vector<double> standard_error;
};

struct EnsembleOptions {
  unsigned threads = 0;             // 0: hardware concurrency
  std::size_t chunk_size = 32;      // trajectories per reduction unit
  bool keep_trajectories = false;   // retain every TrajectoryRecord
  bool block_statistics = false;    // mean of the full block state per row
};

struct TrajectoryFailure {
  std::size_t index = 0;
  std::string message;
};

struct EnsembleResult {
  std::string scenario;
  Detection detection = Detection::homodyne;
  std::vector<double> times;
  SeriesStats x, y, z, purity;
  SeriesStats innovation;               // dW or dN per row
  std::vector<BlockState> mean_blocks;  // only with block_statistics
  TrajectoryRecord me;                  // RK4 reference on the same grid
  std::vector<std::vector<double>> jump_times;  // per completed trajectory
  std::vector<TrajectoryRecord> trajectories;   // only with keep_trajectories
  std::vector<TrajectoryFailure> failures;
  std::size_t completed = 0;
  std::size_t clamped_rates = 0;
  std::size_t rate_warnings = 0;
  double max_normalization_defect = 0.0;
};

// Trajectory i runs with seed stream_seed(scenario seed, i). Trajectories that
// throw (divergence, oversized steps, degenerate jumps) are excluded from the
// statistics and listed in `failures`. The result does not depend on the
// number of threads.
EnsembleResult run_ensemble(const Scenario& scenario, const EnsembleOptions& options = {});

// Unconditioned reference for a scenario.
TrajectoryRecord run_me(const Scenario& scenario);

struct ObservableMetrics {
  double sup_norm = 0.0;
  double rmse = 0.0;
  double max_abs_z_score = 0.0;
  std::vector<double> z_scores;
};

struct ComparisonMetrics {
  ObservableMetrics x, y, z;
};

// Per-time z-scores use the measured standard error floored at 1 / n, so rows
// where every trajectory agrees do not produce 0/0.
ComparisonMetrics compare_to_me(const EnsembleResult& result);
ObservableMetrics compare_series(const std::vector<double>& mean,
                                 const std::vector<double>& standard_error,
                                 const std::vector<double>& reference, std::size_t n);

struct TransientSummary {
  double peak_excitation = 0.0;  // max (1 + z) / 2
  double peak_time = 0.0;
  double terminal_z = 0.0;
  // Over the plateau window, when one is given:
  double plateau_mean_z = 0.0;
  double plateau_min_distance_from_ground = 0.0;  // min |z + 1|
};

struct Window {
  double t0 = 0.0;
  double t1 = 0.0;
};

TransientSummary transient_metrics(const std::vector<double>& times,
                                   const std::vector<BlochVector>& states,
                                   const Window* plateau = nullptr);
// Evaluated on the ME reference of the result.
TransientSummary transient_metrics(const EnsembleResult& result, const Window* plateau = nullptr);

}  // namespace qfilter
