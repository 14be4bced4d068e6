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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qfilter/ensemble.hpp"
#include "qfilter/error.hpp"
#include "qfilter/scenario.hpp"
#include "qfilter/sde_engine.hpp"
#include "support/oracles.hpp"

namespace qfilter {
namespace {

// Vacuum filter with its diffusion switched off or scaled, for the scheme tests.
class ScaledNoise final : public FilterModel {
 public:
  ScaledNoise(SystemTriple g, double drift_scale, double noise_scale)
      : inner_(g, VacuumInput{}, Detection::homodyne), drift_(drift_scale), noise_(noise_scale) {}

  Detection detection() const override { return Detection::homodyne; }
  void fields(double t, const BlockState& s, FieldDecomposition& out) const override {
    inner_.fields(t, s, out);
    for (auto& b : out.drift) b *= drift_;
    for (auto& b : out.diffusion) b *= noise_;
  }
  void drift(double t, const BlockState& s, BlockState& out) const override {
    inner_.drift(t, s, out);
    for (auto& b : out) b *= drift_;
  }
  BlockState initial_state(const BlochVector& b0) const override { return inner_.initial_state(b0); }
  BlochVector expectation(const BlockState& s) const override { return inner_.expectation(s); }
  cplx normalization(const BlockState& s) const override { return inner_.normalization(s); }

 private:
  QubitFilter inner_;
  double drift_;
  double noise_;
};

TEST(Rng, StreamsAreDistinctAndStable) {
  EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
  EXPECT_EQ(stream_seed(42, 7), stream_seed(42, 7));
  Rng a(5), b(5);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(a.normal(), b.normal());
  }
}

TEST(Rng, UniformRange) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Wiener, MeanAndVariance) {
  Rng rng(2026);
  const double dt = 0.01;
  const int n = 1'000'000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double w = wiener_increment(rng, dt);
    sum += w;
    sq += w * w;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_LT(std::abs(mean), 4e-4);
  EXPECT_LT(std::abs(var / dt - 1.0), 0.015);
  EXPECT_THROW(wiener_increment(rng, 0.0), InvalidInput);
}

TEST(Jump, ThinningRate) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(jump_increment(rng, 0.0, 1e-3), 0);
  }
  const int n = 1'000'000;
  const double p = 2.0 * 1e-3;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    count += jump_increment(rng, 2.0, 1e-3);
  }
  EXPECT_LT(std::abs(count - n * p), 3.0 * std::sqrt(n * p * (1 - p)));
  EXPECT_THROW(jump_increment(rng, 10.0, 0.1), StepTooLarge);
  EXPECT_THROW(jump_increment(rng, -1.0, 0.1), InvalidInput);
}

TEST(Config, Validation) {
  IntegratorConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.steps(), 10000u);
  c.dt = 0.0;
  EXPECT_THROW(c.validate(), InvalidInput);
  c = {};
  c.record_stride = 0;
  EXPECT_THROW(c.validate(), InvalidInput);
  c = {};
  c.dt = 1e-9;
  c.t_final = 1.0;
  EXPECT_THROW(c.validate(), InvalidInput);
  c = {};
  c.noise_substeps = 0;
  EXPECT_THROW(c.validate(), InvalidInput);
}

IntegratorConfig fine(double dt, double t_final, std::uint64_t seed = 1) {
  IntegratorConfig c;
  c.dt = dt;
  c.t_final = t_final;
  c.seed = seed;
  c.record_stride = 1;
  return c;
}

TEST(Diffusive, ZeroFieldsKeepState) {
  const ScaledNoise model(SystemTriple::two_level(1.0, 1.0), 0.0, 0.0);
  const BlockState x0 = model.initial_state({0.3, 0.2, 0.1});
  const auto rec = integrate_diffusive(model, x0, fine(1e-2, 1.0));
  for (const auto& b : rec.states) {
    EXPECT_EQ(b, (BlochVector{0.3, 0.2, 0.1}));
  }
}

TEST(Diffusive, PureDriftDecay) {
  const ScaledNoise model(SystemTriple::two_level(1.0, 0.0), 1.0, 0.0);
  IntegratorConfig c = fine(1e-3, std::log(2.0));
  const auto rec = integrate_diffusive(model, model.initial_state({0, 0, 1}), c);
  EXPECT_NEAR(rec.times.back(), std::log(2.0), 1e-3);
  const double exact = -1.0 + 2.0 * std::exp(-rec.times.back());
  EXPECT_NEAR(rec.states.back().z, exact, 2e-3);
  EXPECT_NEAR(rec.states.back().z, 0.0, 3e-3);
}

TEST(Diffusive, StrongConvergenceWithCoupledNoise) {
  const QubitFilter model(SystemTriple::two_level(1.0, std::numbers::pi), VacuumInput{},
                          Detection::homodyne);
  const BlockState x0 = model.initial_state({1, 0, 0});
  auto gap = [&](double dt) {
    double total = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      IntegratorConfig coarse = fine(2 * dt, 1.0, seed);
      coarse.noise_substeps = 2;
      const auto a = integrate_diffusive(model, x0, coarse);
      const auto b = integrate_diffusive(model, x0, fine(dt, 1.0, seed));
      const BlochVector p = a.states.back(), q = b.states.back();
      total += std::sqrt((p.x - q.x) * (p.x - q.x) + (p.y - q.y) * (p.y - q.y) +
                         (p.z - q.z) * (p.z - q.z));
    }
    return total / 20;
  };
  const double g_coarse = gap(2e-3), g_fine = gap(2.5e-4);
  EXPECT_LT(g_coarse, 3.0 * std::sqrt(2e-3));
  EXPECT_LT(g_fine, 3.0 * std::sqrt(2.5e-4));
  EXPECT_LT(g_fine, g_coarse);
}

TEST(Diffusive, RecordConsistency) {
  const Scenario s = builtin_scenario("fig4_single_photon_hd");
  const QubitFilter model = s.filter();
  const auto rec = integrate_diffusive(model, s.initial_state(), fine(1e-3, 5.0));
  ASSERT_EQ(rec.rows(), rec.record.size());
  ASSERT_EQ(rec.rows(), rec.innovations.size());
  ASSERT_EQ(rec.rows(), rec.purity.size());
  for (std::size_t k = 1; k < rec.rows(); ++k) {
    const double dy = rec.record[k] - rec.record[k - 1];
    EXPECT_NEAR(dy - rec.compensator[k], rec.innovations[k], 1e-12);
  }
}

TEST(Diffusive, Deterministic) {
  const Scenario s = builtin_scenario("fig5_cat_hd");
  const QubitFilter model = s.filter();
  IntegratorConfig c = s.integrator;
  c.t_final = 3.0;
  const auto a = integrate_sme(model, s.initial_state(), c);
  const auto b = integrate_sme(model, s.initial_state(), c);
  EXPECT_EQ(a.states, b.states);
  EXPECT_EQ(a.record, b.record);
}

TEST(Jump, ExcitedVacuumResetsExactly) {
  const Scenario s = builtin_scenario("fig3_vacuum_pd");
  const QubitFilter model = s.filter();
  IntegratorConfig c = s.integrator;
  c.t_final = 30.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    c.seed = seed;
    const auto rec = integrate_jump(model, s.initial_state(), c);
    ASSERT_EQ(rec.jump_times.size(), 1u);
    EXPECT_EQ(rec.jump_states[0], (BlochVector{0, 0, -1}));
    EXPECT_EQ(rec.states.back(), (BlochVector{0, 0, -1}));
    for (std::size_t k = 0; k < rec.rows(); ++k) {
      EXPECT_EQ(rec.record[k], rec.times[k] < rec.jump_times[0] ? 0.0 : 1.0);
    }
  }
}

TEST(Jump, SilentGroundFollowsDrift) {
  Scenario s = builtin_scenario("fig3_vacuum_pd");
  s.initial_bloch = {0, 0, -1};
  const QubitFilter model = s.filter();
  const auto rec = integrate_jump(model, s.initial_state(), s.integrator);
  EXPECT_TRUE(rec.jump_times.empty());
  for (const auto& b : rec.states) {
    EXPECT_EQ(b, (BlochVector{0, 0, -1}));
  }
}

TEST(Jump, OversizedStepIsRejected) {
  const QubitFilter model(SystemTriple::two_level(500.0, 0.0), VacuumInput{},
                          Detection::photon_counting);
  EXPECT_THROW(integrate_jump(model, model.initial_state({0, 0, 1}), fine(1e-2, 1.0)),
               StepTooLarge);
}

TEST(Jump, LargeRateStepsAreCounted) {
  const QubitFilter model(SystemTriple::two_level(60.0, 0.0), VacuumInput{},
                          Detection::photon_counting);
  const auto rec = integrate_jump(model, model.initial_state({0, 0, 1}), fine(1e-2, 1.0, 4));
  EXPECT_GT(rec.rate_warnings, 0u);
}

TEST(Jump, FirstJumpTimesAgainstOracle) {
  Scenario s = builtin_scenario("fig3_vacuum_pd");
  s.integrator.t_final = 20.0;
  s.n_trajectories = 2000;
  const EnsembleResult r = run_ensemble(s);
  std::vector<double> first;
  for (const auto& j : r.jump_times) {
    ASSERT_FALSE(j.empty());
    first.push_back(j.front());
  }
  const testing::FirstJumpOracle oracle(s.filter(), s.initial_state(), 20.0);
  // From the excited state the no-detection path stays put, so the oracle is Exp(gamma).
  EXPECT_NEAR(oracle.cdf(1.0), 1.0 - std::exp(-1.0), 1e-9);
  const double d = testing::ks_statistic(first, [&](double t) { return oracle.cdf(t); });
  EXPECT_LT(d, testing::ks_critical_1pct(first.size()));
}

TEST(Ode, AnalyticDecay) {
  const QubitFilter model(SystemTriple::two_level(1.0, 0.0), VacuumInput{}, Detection::homodyne);
  const auto rec = integrate_ode(model, model.initial_state({0, 0, 1}), fine(1e-3, 10.0));
  double worst = 0.0;
  for (std::size_t k = 0; k < rec.rows(); ++k) {
    worst = std::max(worst, std::abs(rec.states[k].z - (-1.0 + 2.0 * std::exp(-rec.times[k]))));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Ode, PrecessionPeriod) {
  const QubitFilter model(SystemTriple::two_level(0.0, 2.0 * std::numbers::pi), VacuumInput{},
                          Detection::homodyne);
  const auto rec = integrate_ode(model, model.initial_state({1, 0, 0}), fine(1e-3, 1.0));
  EXPECT_NEAR(rec.states.back().x, 1.0, 1e-9);
  EXPECT_NEAR(rec.states.back().y, 0.0, 1e-9);
  for (const auto& b : rec.states) {
    EXPECT_NEAR(b.norm_squared(), 1.0, 1e-9);
  }
}

TEST(Ode, ZeroDriftIsConstant) {
  const ScaledNoise model(SystemTriple::two_level(1.0, 1.0), 0.0, 0.0);
  const auto rec = integrate_ode(model, model.initial_state({0.1, 0.2, 0.3}), fine(1e-2, 1.0));
  for (const auto& b : rec.states) {
    EXPECT_EQ(b, (BlochVector{0.1, 0.2, 0.3}));
  }
}

TEST(Recording, StrideAndFinalRow) {
  const QubitFilter model(SystemTriple::two_level(1.0, 0.0), VacuumInput{}, Detection::homodyne);
  IntegratorConfig c = fine(1e-2, 1.05);
  c.record_stride = 10;
  const auto rec = integrate_sme(model, model.initial_state({1, 0, 0}), c);
  ASSERT_GE(rec.rows(), 2u);
  EXPECT_DOUBLE_EQ(rec.times[1], 0.1);
  EXPECT_NEAR(rec.times.back(), 1.05, 1e-12);
}

}  // namespace
}  // namespace qfilter
