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

// Time stepping: Euler-Maruyama for homodyne filters, Bernoulli-thinned jumps
// for counting filters, classical RK4 for the unconditioned equations.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qfilter/block_state.hpp"
#include "qfilter/filters.hpp"

namespace qfilter {

struct IntegratorConfig {
  double dt = 1e-3;
  double t_final = 10.0;
  std::uint64_t seed = 1;
  std::size_t record_stride = 10;
  // Each dW is the sum of this many N(0, dt / noise_substeps) draws, so a run
  // at dt with 2 substeps sees the same Brownian path as a run at dt / 2.
  std::size_t noise_substeps = 1;
  double rate_warning = 0.1;  // nu * dt above this is counted, not rejected
  bool keep_blocks = false;   // store the full block state on every recorded row

  std::size_t steps() const;
  void validate() const;
};

inline constexpr std::size_t kMaxSteps = 100'000'000;

std::uint64_t splitmix64(std::uint64_t x);

// Stream seed of trajectory `index`: splitmix64(base ^ splitmix64(index + golden)).
std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // 53-bit uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Box-Muller; the sine partner of each pair is cached for the next call.
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// N(0, dt).
double wiener_increment(Rng& rng, double dt);

// 1 with probability nu * dt. Throws StepTooLarge when nu * dt >= 1 and
// InvalidInput when nu < 0.
int jump_increment(Rng& rng, double nu, double dt);

struct TrajectoryRecord {
  Detection detection = Detection::homodyne;
  std::vector<double> times;
  std::vector<BlochVector> states;   // physical expectation
  std::vector<BlockState> blocks;    // only with keep_blocks
  std::vector<double> innovations;   // dW or dN accumulated since the previous row
  std::vector<double> compensator;   // K dt accumulated since the previous row (homodyne)
  std::vector<double> record;        // cumulative measurement Y
  std::vector<double> purity;

  std::vector<double> jump_times;
  std::vector<BlochVector> jump_states;  // physical state right after each detection

  std::size_t clamped_rates = 0;
  std::size_t rate_warnings = 0;
  double max_normalization_defect = 0.0;  // max |pi_t(I) - 1| over all steps

  std::size_t rows() const { return times.size(); }
};

TrajectoryRecord integrate_diffusive(const FilterModel& model, const BlockState& x0,
                                     const IntegratorConfig& config);
TrajectoryRecord integrate_jump(const FilterModel& model, const BlockState& x0,
                                const IntegratorConfig& config);
// RK4 on the drift alone.
TrajectoryRecord integrate_ode(const FilterModel& model, const BlockState& x0,
                               const IntegratorConfig& config);

// Dispatches on model.detection().
TrajectoryRecord integrate_sme(const FilterModel& model, const BlockState& x0,
                               const IntegratorConfig& config);

}  // namespace qfilter
