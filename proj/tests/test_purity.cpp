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
#include "qfilter/purity.hpp"
#include "qfilter/scenario.hpp"
#include "qfilter/validation.hpp"

namespace qfilter {
namespace {

BlockState vacuum(BlochVector b) {
  BlockState s(1);
  s[0] = Block::from_bloch(b);
  return s;
}

const FieldSample kVacuum{};

TEST(PurityBloch, Examples) {
  EXPECT_EQ(purity_bloch({0, 0, -1}), 1.0);
  EXPECT_EQ(purity_bloch({0, 0, 0}), 0.0);
  EXPECT_NEAR(purity_bloch({0.6, 0, 0.8}), 1.0, 1e-15);
}

TEST(Unconditioned, VacuumExamples) {
  const SystemTriple g = SystemTriple::two_level(1.0, 0.0);
  EXPECT_NEAR(purity_rate_general_unconditioned(g, vacuum({0, 0, -1}), kVacuum), 0.0, 1e-15);
  EXPECT_NEAR(purity_rate_qubit_me(vacuum({0, 0, -1}), kVacuum, 1.0), 0.0, 1e-15);
  // dP/dt = 2 z dz/dt = 2 * 1 * (-2) at the excited state.
  EXPECT_NEAR(purity_rate_general_unconditioned(g, vacuum({0, 0, 1}), kVacuum), -4.0, 1e-14);
  EXPECT_NEAR(purity_rate_qubit_me(vacuum({0, 0, 1}), kVacuum, 1.0), -4.0, 1e-14);
}

TEST(Unconditioned, PureStatesLosePurityExceptAtGround) {
  // On the sphere the rate is -gamma (1 + z)^2.
  for (double z : {-0.5, 0.0, 0.5, 1.0}) {
    const BlochVector b{std::sqrt(1 - z * z), 0, z};
    EXPECT_NEAR(purity_rate_qubit_me(vacuum(b), kVacuum, 1.0), -(1 + z) * (1 + z), 1e-14) << z;
  }
}

TEST(Unconditioned, PhotonWithoutFieldIsVacuum) {
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const RandomCase v = random_vacuum_case(rng);
    BlockState s(2);
    s(1, 1) = v.state[0];
    const FieldSample photon{InputKind::single_photon, 0.0, {}};
    EXPECT_NEAR(purity_rate_qubit_me(s, photon, v.system.gamma),
                purity_rate_qubit_me(v.state, kVacuum, v.system.gamma), 1e-12);
    EXPECT_NEAR(purity_rate_qubit_hd(s, photon, v.system),
                purity_rate_qubit_hd(v.state, kVacuum, v.system), 1e-12);
  }
}

TEST(Conditioned, VacuumExamples) {
  const SystemTriple g = SystemTriple::two_level(1.0, 0.0);
  EXPECT_NEAR(purity_rate_general_conditioned_hd(g, vacuum({1, 0, 0}), kVacuum), 0.0, 1e-15);
  // Centre: the drift contributes nothing and |D|^2 = gamma.
  EXPECT_NEAR(purity_rate_general_conditioned_hd(g, vacuum({0, 0, 0}), kVacuum), 1.0, 1e-15);
  EXPECT_NEAR(purity_rate_qubit_hd(vacuum({0, 0, 0}), kVacuum, g), 1.0, 1e-15);
}

TEST(Conditioned, PureStatesStayPure) {
  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const SystemTriple g = SystemTriple::two_level(0.2 + 3 * rng.uniform(), 3 * rng.normal());
    BlochVector b{rng.normal(), rng.normal(), rng.normal()};
    const double r = std::sqrt(b.norm_squared());
    b = {b.x / r, b.y / r, b.z / r};
    EXPECT_NEAR(purity_rate_qubit_hd(vacuum(b), kVacuum, g), 0.0, 1e-12);
    EXPECT_NEAR(purity_rate_general_conditioned_hd(g, vacuum(b), kVacuum), 0.0, 1e-12);
  }
}

TEST(Conditioned, PublishedPhotonFormIsTwiceVacuumWithoutField) {
  Rng rng(9);
  const SystemTriple g = SystemTriple::two_level(1.0, 0.0);
  for (int i = 0; i < 20; ++i) {
    const RandomCase v = random_vacuum_case(rng);
    BlockState s(2);
    s(1, 1) = v.state[0];
    EXPECT_NEAR(purity_rate_photon_hd_published(s, 0.0, 1.0),
                2.0 * purity_rate_qubit_hd(v.state, kVacuum, g), 1e-12);
  }
}

TEST(GeneralVsClosed, RandomStates) {
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    RandomCase cases[] = {random_vacuum_case(rng), random_photon_case(rng),
                          random_cat_case(rng, 1 + i % 3)};
    for (RandomCase& c : cases) {
      c.field.xi = c.field.xi.real();
      EXPECT_NEAR(purity_rate_general_unconditioned(c.system, c.state, c.field),
                  purity_rate_qubit_me(c.state, c.field, c.system.gamma), 1e-10);
      EXPECT_NEAR(purity_rate_general_conditioned_hd(c.system, c.state, c.field),
                  purity_rate_qubit_hd(c.state, c.field, c.system), 1e-10);
    }
  }
}

TEST(FiniteDifference, AlongMasterEquation) {
  for (const char* name : {"fig2_vacuum_hd", "fig4_single_photon_hd", "fig5_cat_hd"}) {
    Scenario s = builtin_scenario(name);
    s.integrator.record_stride = 1;
    s.integrator.keep_blocks = true;
    const double dt = s.integrator.dt;
    const TrajectoryRecord me = run_me(s);
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < me.rows(); ++k) {
      const FieldSample f = sample_field(s.input, me.times[k]);
      const double fd = (me.purity[k + 1] - me.purity[k]) / dt;
      worst = std::max(worst, std::abs(fd - purity_rate_qubit_me(me.blocks[k], f, s.gamma)));
    }
    EXPECT_LT(worst, 5 * dt) << name;
  }
}

TEST(Trajectory, VacuumHomodyneRateVanishesOnPureStates) {
  Scenario s = builtin_scenario("fig2_vacuum_hd");
  s.integrator.dt = 1e-4;
  s.integrator.t_final = 2.0;
  const QubitFilter model = s.filter();
  const TrajectoryRecord rec = integrate_sme(model, s.initial_state(), s.integrator);
  const SystemTriple g = s.system();
  for (const BlochVector& b : rec.states) {
    // The Euler state itself is only pure to O(dt); its radial projection is exactly pure.
    const double r = std::sqrt(b.norm_squared());
    const BlochVector p{b.x / r, b.y / r, b.z / r};
    EXPECT_NEAR(purity_rate_qubit_hd(vacuum(p), kVacuum, g), 0.0, 1e-14);
    const double rate = purity_rate_qubit_hd(vacuum(b), kVacuum, g);
    EXPECT_NEAR(rate, g.gamma * (b.norm_squared() - 1) * (b.x * b.x - 1), 1e-14);
  }
}

TEST(Empirical, IdenticalPureTrajectories) {
  TrajectoryRecord r;
  r.times = {0.0, 0.1, 0.2};
  r.purity = {1.0, 1.0, 1.0};
  const std::vector<TrajectoryRecord> records(4, r);
  const PuritySeries p = empirical_conditioned_purity(records);
  EXPECT_EQ(p.mean, (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(p.standard_error, (std::vector<double>{0, 0, 0}));
}

TEST(Empirical, RejectsMisalignedOrTooFew) {
  TrajectoryRecord a, b;
  a.times = {0.0, 0.1};
  a.purity = {1.0, 1.0};
  b.times = {0.0, 0.2};
  b.purity = {1.0, 1.0};
  const std::vector<TrajectoryRecord> both = {a, b};
  EXPECT_THROW(empirical_conditioned_purity(both), AlignmentError);
  const std::vector<TrajectoryRecord> one = {a};
  EXPECT_THROW(empirical_conditioned_purity(one), InvalidInput);
}

TEST(Empirical, VacuumHomodyneStaysPure) {
  Scenario s = builtin_scenario("fig2_vacuum_hd");
  s.integrator.dt = 1e-4;
  s.integrator.t_final = 2.0;
  s.integrator.record_stride = 100;
  s.n_trajectories = 64;
  EnsembleOptions opt;
  opt.keep_trajectories = true;
  const EnsembleResult r = run_ensemble(s, opt);
  const PuritySeries p = empirical_conditioned_purity(r.trajectories);
  for (double m : p.mean) {
    EXPECT_NEAR(m, 1.0, 1e-2);
  }
  for (std::size_t k = 0; k < p.mean.size(); ++k) {
    EXPECT_NEAR(p.mean[k], r.purity.mean[k], 1e-12);
  }
}

TEST(Empirical, VacuumCountingIsPureBetweenJumps) {
  Scenario s = builtin_scenario("fig3_vacuum_pd");
  s.integrator.t_final = 20.0;
  s.n_trajectories = 64;
  EnsembleOptions opt;
  opt.keep_trajectories = true;
  const EnsembleResult r = run_ensemble(s, opt);
  for (const auto& rec : r.trajectories) {
    for (double p : rec.purity) {
      EXPECT_NEAR(p, 1.0, 1e-12);
    }
  }
  EXPECT_EQ(r.purity.mean.back(), 1.0);
}

}  // namespace
}  // namespace qfilter
