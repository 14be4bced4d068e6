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

#include "qfilter/sde_engine.hpp"

#include <cmath>
#include <numbers>

#include "qfilter/error.hpp"

namespace qfilter {

std::size_t IntegratorConfig::steps() const {
  return static_cast<std::size_t>(std::llround(t_final / dt));
}

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidInput("integrator dt must be positive");
  }
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw InvalidInput("integrator t_final must be positive");
  }
  if (record_stride == 0) {
    throw InvalidInput("record_stride must be at least 1");
  }
  if (noise_substeps == 0) {
    throw InvalidInput("noise_substeps must be at least 1");
  }
  if (t_final / dt > static_cast<double>(kMaxSteps)) {
    throw InvalidInput("t_final / dt exceeds the step guard");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(index + 0x9E3779B97F4A7C15ULL));
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phase = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phase);
  has_spare_ = true;
  return r * std::cos(phase);
}

double wiener_increment(Rng& rng, double dt) {
  if (!(dt > 0.0)) {
    throw InvalidInput("wiener increment needs dt > 0");
  }
  return std::sqrt(dt) * rng.normal();
}

int jump_increment(Rng& rng, double nu, double dt) {
  if (nu < 0.0) {
    throw InvalidInput("negative counting rate");
  }
  const double p = nu * dt;
  if (p >= 1.0) {
    throw StepTooLarge("nu * dt = " + std::to_string(p) + " >= 1");
  }
  return rng.uniform() < p ? 1 : 0;
}

namespace {

class Recorder {
 public:
  Recorder(const FilterModel& model, const IntegratorConfig& config, TrajectoryRecord& rec)
      : model_(model), config_(config), rec_(rec) {
    const std::size_t rows = config.steps() / config.record_stride + 2;
    rec.detection = model.detection();
    rec.times.reserve(rows);
    rec.states.reserve(rows);
    rec.innovations.reserve(rows);
    rec.compensator.reserve(rows);
    rec.record.reserve(rows);
    rec.purity.reserve(rows);
  }

  void push(double t, const BlockState& s, double innovation, double compensator, double y) {
    const BlochVector b = model_.expectation(s);
    rec_.times.push_back(t);
    rec_.states.push_back(b);
    rec_.innovations.push_back(innovation);
    rec_.compensator.push_back(compensator);
    rec_.record.push_back(y);
    rec_.purity.push_back(b.norm_squared());
    if (config_.keep_blocks) {
      rec_.blocks.push_back(s);
    }
  }

  void check(std::size_t step, const BlockState& s) {
    if (!s.all_finite()) {
      throw Divergence(step, "non-finite state");
    }
    const double defect = std::abs(model_.normalization(s) - 1.0);
    if (defect > rec_.max_normalization_defect) {
      rec_.max_normalization_defect = defect;
    }
  }

 private:
  const FilterModel& model_;
  const IntegratorConfig& config_;
  TrajectoryRecord& rec_;
};

double time_at(const IntegratorConfig& c, std::size_t k) { return static_cast<double>(k) * c.dt; }

bool records(const IntegratorConfig& c, std::size_t k, std::size_t steps) {
  return k % c.record_stride == 0 || k == steps;
}

}  // namespace

TrajectoryRecord integrate_diffusive(const FilterModel& model, const BlockState& x0,
                                     const IntegratorConfig& config) {
  config.validate();
  TrajectoryRecord rec;
  Recorder recorder(model, config, rec);
  Rng rng(config.seed);
  const std::size_t steps = config.steps();
  const double sub_dt = config.dt / static_cast<double>(config.noise_substeps);

  BlockState x = x0;
  FieldDecomposition f;
  double y = 0.0;
  double dw_acc = 0.0;
  double k_acc = 0.0;
  recorder.check(0, x);
  recorder.push(0.0, x, 0.0, 0.0, 0.0);

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = time_at(config, k);
    model.fields(t, x, f);
    double dw = 0.0;
    for (std::size_t q = 0; q < config.noise_substeps; ++q) {
      dw += wiener_increment(rng, sub_dt);
    }
    x.axpy(config.dt, f.drift);
    x.axpy(dw, f.diffusion);
    const double kdt = f.observation_rate * config.dt;
    y += kdt + dw;
    dw_acc += dw;
    k_acc += kdt;
    recorder.check(k + 1, x);
    if (records(config, k + 1, steps)) {
      recorder.push(time_at(config, k + 1), x, dw_acc, k_acc, y);
      dw_acc = 0.0;
      k_acc = 0.0;
    }
  }
  return rec;
}

TrajectoryRecord integrate_jump(const FilterModel& model, const BlockState& x0,
                                const IntegratorConfig& config) {
  config.validate();
  TrajectoryRecord rec;
  Recorder recorder(model, config, rec);
  Rng rng(config.seed);
  const std::size_t steps = config.steps();

  BlockState x = x0;
  BlockState prev = x0;
  FieldDecomposition f;
  double y = 0.0;
  double dn_acc = 0.0;
  recorder.check(0, x);
  recorder.push(0.0, x, 0.0, 0.0, 0.0);

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = time_at(config, k);
    model.fields(t, x, f);
    if (f.rate_clamped) {
      ++rec.clamped_rates;
    }
    const double nu = f.observation_rate;
    if (nu * config.dt >= config.rate_warning) {
      ++rec.rate_warnings;
    }
    const int dn = jump_increment(rng, nu, config.dt);
    if (dn == 1) {
      x = jump_state(f);
      rec.jump_times.push_back(time_at(config, k + 1));
      rec.jump_states.push_back(model.expectation(x));
    } else {
      // x += drift dt - nu (target - x) dt, with x taken before the update
      prev = x;
      x.axpy(config.dt, f.drift);
      if (f.has_jump_target) {
        x.axpy(-nu * config.dt, f.jump_target);
        x.axpy(nu * config.dt, prev);
      }
    }
    y += dn;
    dn_acc += dn;
    recorder.check(k + 1, x);
    if (records(config, k + 1, steps)) {
      recorder.push(time_at(config, k + 1), x, dn_acc, 0.0, y);
      dn_acc = 0.0;
    }
  }
  return rec;
}

TrajectoryRecord integrate_ode(const FilterModel& model, const BlockState& x0,
                               const IntegratorConfig& config) {
  config.validate();
  TrajectoryRecord rec;
  Recorder recorder(model, config, rec);
  const std::size_t steps = config.steps();
  const double h = config.dt;

  BlockState x = x0;
  BlockState k1, k2, k3, k4, tmp;
  recorder.check(0, x);
  recorder.push(0.0, x, 0.0, 0.0, 0.0);

  for (std::size_t k = 0; k < steps; ++k) {
    const double t = time_at(config, k);
    // Last stage from inside the step: a pulse edge on t_{k+1} belongs to the next step.
    const double t_end = std::nextafter(time_at(config, k + 1), t);
    model.drift(t, x, k1);
    tmp = x;
    tmp.axpy(0.5 * h, k1);
    model.drift(t + 0.5 * h, tmp, k2);
    tmp = x;
    tmp.axpy(0.5 * h, k2);
    model.drift(t + 0.5 * h, tmp, k3);
    tmp = x;
    tmp.axpy(h, k3);
    model.drift(t_end, tmp, k4);
    x.axpy(h / 6.0, k1);
    x.axpy(h / 3.0, k2);
    x.axpy(h / 3.0, k3);
    x.axpy(h / 6.0, k4);
    recorder.check(k + 1, x);
    if (records(config, k + 1, steps)) {
      recorder.push(time_at(config, k + 1), x, 0.0, 0.0, 0.0);
    }
  }
  return rec;
}

TrajectoryRecord integrate_sme(const FilterModel& model, const BlockState& x0,
                               const IntegratorConfig& config) {
  return model.detection() == Detection::homodyne ? integrate_diffusive(model, x0, config)
                                                  : integrate_jump(model, x0, config);
}

}  // namespace qfilter
