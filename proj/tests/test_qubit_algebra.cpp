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

#include "qfilter/error.hpp"
#include "qfilter/qubit_algebra.hpp"
#include "qfilter/sde_engine.hpp"

namespace qfilter {
namespace {

const cplx I{0.0, 1.0};

double dist(const Operator2& a, const Operator2& b) { return (a - b).cwiseAbs().maxCoeff(); }

Operator2 random_operator(Rng& rng) {
  Operator2 m;
  for (int i = 0; i < 4; ++i) {
    m(i / 2, i % 2) = cplx(rng.normal(), rng.normal());
  }
  return m;
}

BlochVector random_bloch(Rng& rng) {
  BlochVector b{rng.normal(), rng.normal(), rng.normal()};
  const double r = std::cbrt(rng.uniform()) / std::sqrt(b.norm_squared());
  return {b.x * r, b.y * r, b.z * r};
}

TEST(Pauli, MatricesInExcitedGroundBasis) {
  Operator2 sx, sz;
  sx << 0, 1, 1, 0;
  sz << 1, 0, 0, -1;
  EXPECT_EQ(pauli(Pauli::x), sx);
  EXPECT_EQ(pauli(Pauli::z), sz);
  EXPECT_EQ(pauli(Pauli::identity), Operator2::Identity());
  // sigma_- takes |e> = (1, 0) to |g> = (0, 1).
  EXPECT_EQ(pauli(Pauli::minus) * Eigen::Vector2cd(1, 0), Eigen::Vector2cd(0, 1));
  EXPECT_EQ(pauli(Pauli::plus), pauli(Pauli::minus).adjoint());
}

TEST(Pauli, ProductTable) {
  const Operator2 s[3] = {pauli(Pauli::x), pauli(Pauli::y), pauli(Pauli::z)};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Operator2 expect = Operator2::Identity() * (a == b ? 1.0 : 0.0);
      for (int c = 0; c < 3; ++c) {
        expect += I * (static_cast<double>((a - b) * (b - c) * (c - a)) / 2.0) * s[c];
      }
      EXPECT_LT(dist(s[a] * s[b], expect), 1e-15) << a << b;
    }
  }
}

TEST(Bloch, DensityExamples) {
  Operator2 e = Operator2::Zero(), g = Operator2::Zero(), plus;
  e(0, 0) = 1;
  g(1, 1) = 1;
  plus << 0.5, 0.5, 0.5, 0.5;
  EXPECT_LT(dist(bloch_to_density({0, 0, 1}), e), 1e-15);
  EXPECT_LT(dist(bloch_to_density({0, 0, -1}), g), 1e-15);
  EXPECT_LT(dist(bloch_to_density({1, 0, 0}), plus), 1e-15);

  Operator2 y_state;
  y_state << 0.5, -0.5 * I, 0.5 * I, 0.5;
  EXPECT_EQ(density_to_bloch(e), (BlochVector{0, 0, 1}));
  EXPECT_EQ(density_to_bloch(y_state), (BlochVector{0, 1, 0}));
  EXPECT_EQ(density_to_bloch(0.5 * Operator2::Identity()), (BlochVector{0, 0, 0}));
}

TEST(Bloch, RoundTripAndPurity) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const BlochVector b = random_bloch(rng);
    const Operator2 rho = bloch_to_density(b);
    const BlochVector back = density_to_bloch(rho);
    EXPECT_NEAR(back.x, b.x, 1e-12);
    EXPECT_NEAR(back.y, b.y, 1e-12);
    EXPECT_NEAR(back.z, b.z, 1e-12);
    EXPECT_NEAR(purity_density(rho), b.norm_squared(), 1e-12);
  }
}

TEST(Bloch, RejectsNonDensity) {
  EXPECT_THROW(density_to_bloch(Operator2::Identity()), InvalidState);
  Operator2 skew = bloch_to_density({0, 0, 0});
  skew(0, 1) = 0.3;
  EXPECT_THROW(density_to_bloch(skew), InvalidState);
}

TEST(Commutator, Examples) {
  const Operator2 sx = pauli(Pauli::x), sy = pauli(Pauli::y), sz = pauli(Pauli::z);
  EXPECT_LT(dist(commutator(sx, sy), 2.0 * I * sz), 1e-15);
  EXPECT_LT(dist(commutator(sz, sz), Operator2::Zero()), 1e-15);
  EXPECT_LT(dist(commutator(sy, sz), 2.0 * I * sx), 1e-15);
}

TEST(MatrixLaws, RandomInstances) {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const Operator2 a = random_operator(rng), b = random_operator(rng), c = random_operator(rng);
    EXPECT_LT(dist((a * b) * c, a * (b * c)), 1e-12);
    EXPECT_LT(dist((a + b) + c, a + (b + c)), 1e-12);
    EXPECT_LT(dist((a * b).adjoint(), b.adjoint() * a.adjoint()), 1e-12);
    EXPECT_LT(dist(pauli_compose(pauli_decompose(a)), a), 1e-12);
  }
}

TEST(SystemTriple, TwoLevel) {
  const SystemTriple g = SystemTriple::two_level(2.0, 0.7);
  EXPECT_EQ(g.scattering, Operator2::Identity());
  EXPECT_LT(dist(g.coupling, std::sqrt(2.0) * pauli(Pauli::minus)), 1e-15);
  EXPECT_LT(dist(g.hamiltonian, 0.35 * pauli(Pauli::z)), 1e-15);
  EXPECT_NO_THROW(g.validate());

  SystemTriple bad = g;
  bad.scattering(0, 1) = 0.1;
  EXPECT_THROW(bad.validate(), InvalidInput);
  bad = g;
  bad.hamiltonian(0, 1) = I;
  EXPECT_THROW(bad.validate(), InvalidInput);
}

TEST(Lindblad, Examples) {
  const double gamma = 1.3, omega = 0.4;
  const SystemTriple g = SystemTriple::two_level(gamma, omega);
  EXPECT_LT(dist(lindblad_generator(g, Operator2::Identity()), Operator2::Zero()), 1e-15);
  EXPECT_LT(dist(lindblad_generator(g, pauli(Pauli::z)),
                 -gamma * (Operator2::Identity() + pauli(Pauli::z))),
            1e-14);
  EXPECT_LT(dist(lindblad_generator(g, pauli(Pauli::x)),
                 -omega * pauli(Pauli::y) - gamma / 2 * pauli(Pauli::x)),
            1e-14);
}

TEST(Lindblad, PreservesHermiticity) {
  Rng rng(3);
  const SystemTriple g = SystemTriple::two_level(0.8, -1.1);
  for (int i = 0; i < 100; ++i) {
    const Operator2 a = random_operator(rng);
    const Operator2 h = a + a.adjoint();
    const Operator2 out = lindblad_generator(g, h);
    EXPECT_LT(dist(out, out.adjoint()), 1e-12);
  }
}

TEST(Purity, DensityExamples) {
  EXPECT_DOUBLE_EQ(purity_density(bloch_to_density({0, 0, -1})), 1.0);
  EXPECT_NEAR(purity_density(0.5 * Operator2::Identity()), 0.0, 1e-15);
  EXPECT_NEAR(purity_density(bloch_to_density({0.6, 0, 0})), 0.36, 1e-15);
}

}  // namespace
}  // namespace qfilter
