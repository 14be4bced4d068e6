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

#include "qfilter/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "qfilter/error.hpp"

namespace qfilter {

namespace {

// Observable slots accumulated per row: x, y, z, purity, innovation.
constexpr std::size_t kSlots = 5;

struct Partial {
  std::vector<double> sum;     // rows * kSlots
  std::vector<double> sum_sq;  // rows * kSlots
  std::vector<BlockState> block_sum;
  std::vector<TrajectoryRecord> kept;
  std::vector<std::vector<double>> jumps;
  std::vector<TrajectoryFailure> failures;
  std::size_t completed = 0;
  std::size_t clamped = 0;
  std::size_t warnings = 0;
  double norm_defect = 0.0;
};

void run_chunk(const Scenario& sc, const FilterModel& model, const BlockState& x0,
               std::size_t first, std::size_t last, std::size_t rows,
               const EnsembleOptions& opt, Partial& p) {
  p.sum.assign(rows * kSlots, 0.0);
  p.sum_sq.assign(rows * kSlots, 0.0);
  if (opt.block_statistics) {
    p.block_sum.assign(rows, BlockState(x0.branches()));
  }
  IntegratorConfig cfg = sc.integrator;
  cfg.keep_blocks = opt.block_statistics;
  for (std::size_t i = first; i < last; ++i) {
    cfg.seed = stream_seed(sc.integrator.seed, i);
    TrajectoryRecord rec;
    try {
      rec = integrate_sme(model, x0, cfg);
    } catch (const Error& e) {
      p.failures.push_back({i, e.what()});
      continue;
    }
    for (std::size_t k = 0; k < rows; ++k) {
      const double v[kSlots] = {rec.states[k].x, rec.states[k].y, rec.states[k].z, rec.purity[k],
                                rec.innovations[k]};
      for (std::size_t q = 0; q < kSlots; ++q) {
        p.sum[k * kSlots + q] += v[q];
        p.sum_sq[k * kSlots + q] += v[q] * v[q];
      }
      if (opt.block_statistics) {
        p.block_sum[k].axpy(1.0, rec.blocks[k]);
      }
    }
    ++p.completed;
    p.clamped += rec.clamped_rates;
    p.warnings += rec.rate_warnings;
    p.norm_defect = std::max(p.norm_defect, rec.max_normalization_defect);
    p.jumps.push_back(rec.jump_times);
    if (opt.keep_trajectories) {
      if (!opt.block_statistics) {
        rec.blocks.clear();
      }
      p.kept.push_back(std::move(rec));
    }
  }
}

}  // namespace

TrajectoryRecord run_me(const Scenario& scenario) {
  scenario.validate();
  const QubitFilter model = scenario.filter();
  return integrate_ode(model, scenario.initial_state(), scenario.integrator);
}

EnsembleResult run_ensemble(const Scenario& scenario, const EnsembleOptions& options) {
  scenario.validate();
  if (options.chunk_size == 0) {
    throw InvalidInput("ensemble chunk size must be positive");
  }
  const QubitFilter model = scenario.filter();
  const BlockState x0 = scenario.initial_state();

  EnsembleResult out;
  out.scenario = scenario.name;
  out.detection = scenario.detection;
  out.me = integrate_ode(model, x0, scenario.integrator);
  out.times = out.me.times;
  const std::size_t rows = out.times.size();

  const std::size_t n = scenario.n_trajectories;
  const std::size_t chunks = (n + options.chunk_size - 1) / options.chunk_size;
  std::vector<Partial> partials(chunks);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      const std::size_t first = c * options.chunk_size;
      const std::size_t last = std::min(n, first + options.chunk_size);
      run_chunk(scenario, model, x0, first, last, rows, options, partials[c]);
    }
  };
  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
  }

  // Deterministic reduction in chunk order.
  std::vector<double> sum(rows * kSlots, 0.0);
  std::vector<double> sum_sq(rows * kSlots, 0.0);
  if (options.block_statistics) {
    out.mean_blocks.assign(rows, BlockState(x0.branches()));
  }
  for (auto& p : partials) {
    for (std::size_t i = 0; i < sum.size(); ++i) {
      sum[i] += p.sum[i];
      sum_sq[i] += p.sum_sq[i];
    }
    if (options.block_statistics) {
      for (std::size_t k = 0; k < rows; ++k) {
        out.mean_blocks[k].axpy(1.0, p.block_sum[k]);
      }
    }
    out.completed += p.completed;
    out.clamped_rates += p.clamped;
    out.rate_warnings += p.warnings;
    out.max_normalization_defect = std::max(out.max_normalization_defect, p.norm_defect);
    for (auto& j : p.jumps) {
      out.jump_times.push_back(std::move(j));
    }
    for (auto& f : p.failures) {
      out.failures.push_back(std::move(f));
    }
    for (auto& r : p.kept) {
      out.trajectories.push_back(std::move(r));
    }
  }

  SeriesStats* slots[kSlots] = {&out.x, &out.y, &out.z, &out.purity, &out.innovation};
  const auto m = static_cast<double>(out.completed);
  for (auto* s : slots) {
    s->mean.assign(rows, std::numeric_limits<double>::quiet_NaN());
    s->standard_error.assign(rows, std::numeric_limits<double>::quiet_NaN());
  }
  if (out.completed > 0) {
    for (std::size_t k = 0; k < rows; ++k) {
      for (std::size_t q = 0; q < kSlots; ++q) {
        const double mean = sum[k * kSlots + q] / m;
        double var = 0.0;
        if (out.completed > 1) {
          var = std::max(0.0, (sum_sq[k * kSlots + q] - m * mean * mean) / (m - 1.0));
        }
        slots[q]->mean[k] = mean;
        slots[q]->standard_error[k] = std::sqrt(var / m);
      }
    }
    if (options.block_statistics) {
      for (auto& b : out.mean_blocks) {
        for (auto& blk : b) {
          blk *= 1.0 / m;
        }
      }
    }
  }
  return out;
}

ObservableMetrics compare_series(const std::vector<double>& mean,
                                 const std::vector<double>& standard_error,
                                 const std::vector<double>& reference, std::size_t n) {
  if (mean.size() != reference.size() || standard_error.size() != reference.size()) {
    throw AlignmentError("ensemble and reference series differ in length");
  }
  ObservableMetrics m;
  const double floor = n > 0 ? 1.0 / static_cast<double>(n) : 1.0;
  double ss = 0.0;
  m.z_scores.resize(mean.size());
  for (std::size_t k = 0; k < mean.size(); ++k) {
    const double d = mean[k] - reference[k];
    m.sup_norm = std::max(m.sup_norm, std::abs(d));
    ss += d * d;
    m.z_scores[k] = d / std::max(standard_error[k], floor);
    m.max_abs_z_score = std::max(m.max_abs_z_score, std::abs(m.z_scores[k]));
  }
  m.rmse = mean.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(mean.size()));
  return m;
}

ComparisonMetrics compare_to_me(const EnsembleResult& result) {
  std::vector<double> rx, ry, rz;
  rx.reserve(result.me.states.size());
  for (const auto& b : result.me.states) {
    rx.push_back(b.x);
    ry.push_back(b.y);
    rz.push_back(b.z);
  }
  ComparisonMetrics c;
  c.x = compare_series(result.x.mean, result.x.standard_error, rx, result.completed);
  c.y = compare_series(result.y.mean, result.y.standard_error, ry, result.completed);
  c.z = compare_series(result.z.mean, result.z.standard_error, rz, result.completed);
  return c;
}

TransientSummary transient_metrics(const std::vector<double>& times,
                                   const std::vector<BlochVector>& states, const Window* plateau) {
  if (times.size() != states.size() || times.empty()) {
    throw AlignmentError("transient metrics need matching, non-empty series");
  }
  TransientSummary s;
  s.peak_excitation = -std::numeric_limits<double>::infinity();
  double plateau_sum = 0.0;
  std::size_t plateau_rows = 0;
  s.plateau_min_distance_from_ground = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double pe = 0.5 * (1.0 + states[k].z);
    if (pe > s.peak_excitation) {
      s.peak_excitation = pe;
      s.peak_time = times[k];
    }
    if (plateau != nullptr && times[k] >= plateau->t0 && times[k] <= plateau->t1) {
      plateau_sum += states[k].z;
      ++plateau_rows;
      s.plateau_min_distance_from_ground =
          std::min(s.plateau_min_distance_from_ground, std::abs(states[k].z + 1.0));
    }
  }
  s.terminal_z = states.back().z;
  if (plateau_rows > 0) {
    s.plateau_mean_z = plateau_sum / static_cast<double>(plateau_rows);
  } else {
    s.plateau_min_distance_from_ground = 0.0;
  }
  return s;
}

TransientSummary transient_metrics(const EnsembleResult& result, const Window* plateau) {
  return transient_metrics(result.me.times, result.me.states, plateau);
}

}  // namespace qfilter
