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

#include "qfilter/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfilter/purity.hpp"
#include "qfilter/reference_filters.hpp"
#include "qfilter/sde_engine.hpp"

namespace qfilter {

namespace {

using Vec2 = Eigen::Vector2cd;

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

cplx random_complex(Rng& rng, double radius) {
  return std::polar(radius * std::sqrt(rng.uniform()), 2.0 * std::numbers::pi * rng.uniform());
}

Vec2 random_vector(Rng& rng) {
  Vec2 v(cplx(rng.normal(), rng.normal()), cplx(rng.normal(), rng.normal()));
  return v / v.norm();
}

SystemTriple random_system(Rng& rng) {
  return SystemTriple::two_level(uniform(rng, 0.2, 3.0), uniform(rng, -3.0, 3.0));
}

// rho^{jk} = |phi_k><phi_j|
BlockState blocks_from_vectors(const std::vector<Vec2>& phi) {
  const std::size_t n = phi.size();
  BlockState s(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      s(j, k) = block_from_matrix(phi[k] * phi[j].adjoint());
    }
  }
  return s;
}

double block_dev(const Block& a, const Block& b) {
  const Block d = a - b;
  return std::max({std::abs(d.c), std::abs(d.x), std::abs(d.y), std::abs(d.z)});
}

CheckResult verdict(std::string name, double worst, double tol, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.max_deviation = worst;
  r.passed = worst < tol;
  r.detail = std::move(detail);
  return r;
}

FieldDecomposition specialized(const SpecializedFilters& f, const RandomCase& c, Detection d) {
  FieldDecomposition out;
  const bool hd = d == Detection::homodyne;
  switch (c.field.kind) {
    case InputKind::vacuum:
      hd ? f.vacuum_hd(c.state, c.system, out) : f.vacuum_pd(c.state, c.system, out);
      break;
    case InputKind::single_photon:
      hd ? f.photon_hd(c.state, c.field.xi, c.system, out)
         : f.photon_pd(c.state, c.field.xi, c.system, out);
      break;
    case InputKind::cat:
      hd ? f.cat_hd(c.state, c.field.alpha, c.system, out)
         : f.cat_pd(c.state, c.field.alpha, c.system, out);
      break;
  }
  return out;
}

CheckResult oracle_check(const std::string& name, const ValidationOptions& opt, Detection d,
                         RandomCase (*make)(Rng&, std::size_t), std::uint64_t salt) {
  Rng rng(stream_seed(opt.seed, salt));
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const RandomCase c = make(rng, 1 + i % 3);
    const FieldDecomposition ref = reference_fields(c.system, c.state, c.field, d);
    const FieldDecomposition got = specialized(opt.filters, c, d);
    worst = std::max(worst, decomposition_deviation(got, ref, d));
  }
  return verdict(name, worst, opt.tolerance);
}

RandomCase vacuum_maker(Rng& rng, std::size_t) { return random_vacuum_case(rng); }
RandomCase photon_maker(Rng& rng, std::size_t) { return random_photon_case(rng); }
RandomCase cat_maker(Rng& rng, std::size_t n) { return random_cat_case(rng, n); }

CheckResult degeneration_check(const ValidationOptions& opt, bool photon) {
  Rng rng(stream_seed(opt.seed, photon ? 11 : 12));
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    RandomCase v = random_vacuum_case(rng);
    for (Detection d : {Detection::homodyne, Detection::photon_counting}) {
      FieldDecomposition vac = specialized(opt.filters, v, d);
      RandomCase c = v;
      std::size_t j = 0;
      if (photon) {
        c.field.kind = InputKind::single_photon;
        c.field.xi = 0.0;
        c.state = BlockState(2);
        c.state(1, 1) = v.state[0];
        j = 1;
      } else {
        c.field.kind = InputKind::cat;
        c.field.alpha = {0.0};
      }
      FieldDecomposition got = specialized(opt.filters, c, d);
      worst = std::max(worst, block_dev(got.drift(j, j), vac.drift[0]));
      worst = std::max(worst, std::abs(got.observation_rate - vac.observation_rate));
      if (d == Detection::homodyne) {
        worst = std::max(worst, block_dev(got.diffusion(j, j), vac.diffusion[0]));
      } else if (got.has_jump_target != vac.has_jump_target) {
        worst = std::numeric_limits<double>::infinity();
      } else if (vac.has_jump_target) {
        worst = std::max(worst, block_dev(got.jump_target(j, j), vac.jump_target[0]));
      }
    }
  }
  return verdict(photon ? "degeneration.single_photon_zero_field" : "degeneration.cat_zero_field",
                 worst, 1e-12);
}

CheckResult fixed_point_check(const ValidationOptions& opt) {
  Rng rng(stream_seed(opt.seed, 13));
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    const SystemTriple g = random_system(rng);
    BlockState s(1);
    s[0] = Block{1.0, 0.0, 0.0, -1.0};
    FieldDecomposition hd, pd;
    opt.filters.vacuum_hd(s, g, hd);
    opt.filters.vacuum_pd(s, g, pd);
    worst = std::max({worst, block_dev(hd.drift[0], Block{}), block_dev(hd.diffusion[0], Block{}),
                      block_dev(pd.drift[0], Block{}), std::abs(pd.observation_rate)});
  }
  return verdict("fixed_point.vacuum_ground", worst, 1e-12);
}

CheckResult normalization_check(const ValidationOptions& opt, bool photon) {
  Rng rng(stream_seed(opt.seed, photon ? 14 : 15));
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    RandomCase c = photon ? random_photon_case(rng) : random_cat_case(rng, 1 + i % 3);
    if (photon) {
      c.field.xi = c.field.xi.real();  // wavepackets are real
    }
    for (Detection d : {Detection::homodyne, Detection::photon_counting}) {
      const FieldDecomposition f = specialized(opt.filters, c, d);
      const cplx drift_c = physical_normalization(c.field.kind, f.drift);
      worst = std::max(worst, std::abs(drift_c));
      if (d == Detection::homodyne) {
        worst = std::max(worst, std::abs(physical_normalization(c.field.kind, f.diffusion)));
      } else if (f.has_jump_target) {
        worst = std::max(worst, std::abs(physical_normalization(c.field.kind, f.jump_target) - 1.0));
      }
    }
  }
  return verdict(photon ? "normalization.single_photon" : "normalization.cat", worst, 1e-12);
}

CheckResult purity_check(const ValidationOptions& opt, InputKind kind, bool conditioned) {
  Rng rng(stream_seed(opt.seed, 20 + static_cast<std::uint64_t>(kind) * 2 + (conditioned ? 1 : 0)));
  double worst = 0.0;
  for (std::size_t i = 0; i < opt.samples; ++i) {
    RandomCase c = kind == InputKind::vacuum          ? random_vacuum_case(rng)
                   : kind == InputKind::single_photon ? random_photon_case(rng)
                                                      : random_cat_case(rng, 1 + i % 3);
    if (kind == InputKind::single_photon) {
      c.field.xi = c.field.xi.real();
    }
    const double general = conditioned
                               ? purity_rate_general_conditioned_hd(c.system, c.state, c.field)
                               : purity_rate_general_unconditioned(c.system, c.state, c.field);
    const double closed = conditioned ? purity_rate_qubit_hd(c.state, c.field, c.system)
                                      : purity_rate_qubit_me(c.state, c.field, c.system.gamma);
    worst = std::max(worst, std::abs(general - closed));
  }
  return verdict(std::string(conditioned ? "purity.conditioned_hd." : "purity.unconditioned.") +
                     to_string(kind),
                 worst, opt.tolerance);
}

CheckResult pauli_check() {
  const Operator2 s[3] = {pauli(Pauli::x), pauli(Pauli::y), pauli(Pauli::z)};
  const cplx i{0.0, 1.0};
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      Operator2 expect = Operator2::Identity() * (a == b ? 1.0 : 0.0);
      for (int c = 0; c < 3; ++c) {
        // Levi-Civita symbol for indices in {0, 1, 2}
        const double eps = static_cast<double>((a - b) * (b - c) * (c - a)) / 2.0;
        expect += i * eps * s[c];
      }
      worst = std::max(worst, (s[a] * s[b] - expect).cwiseAbs().maxCoeff());
    }
  }
  return verdict("algebra.pauli_products", worst, 1e-12);
}

}  // namespace

RandomCase random_vacuum_case(Rng& rng) {
  RandomCase c;
  c.system = random_system(rng);
  // Uniform direction, radius in [0, 1].
  const Vec2 v = random_vector(rng);
  const BlochVector pure = density_to_bloch(v * v.adjoint());
  const double r = std::cbrt(rng.uniform());
  c.state = BlockState(1);
  c.state[0] = Block::from_bloch({r * pure.x, r * pure.y, r * pure.z});
  c.field.kind = InputKind::vacuum;
  return c;
}

RandomCase random_photon_case(Rng& rng) {
  RandomCase c;
  c.system = random_system(rng);
  const Vec2 phi1 = random_vector(rng);
  const Vec2 phi0 = uniform(rng, 0.2, 1.2) * random_vector(rng);
  c.state = blocks_from_vectors({phi0, phi1});
  c.field.kind = InputKind::single_photon;
  c.field.xi = random_complex(rng, 1.5);
  return c;
}

RandomCase random_cat_case(Rng& rng, std::size_t branches) {
  RandomCase c;
  c.system = random_system(rng);
  std::vector<Vec2> phi;
  Vec2 total = Vec2::Zero();
  for (std::size_t j = 0; j < branches; ++j) {
    phi.push_back(random_complex(rng, 1.0) * random_vector(rng));
    total += phi.back();
  }
  if (total.norm() < 1e-3) {
    phi[0] += random_vector(rng);
    total = Vec2::Zero();
    for (const auto& p : phi) {
      total += p;
    }
  }
  for (auto& p : phi) {
    p /= total.norm();
  }
  c.state = blocks_from_vectors(phi);
  c.field.kind = InputKind::cat;
  for (std::size_t j = 0; j < branches; ++j) {
    c.field.alpha.push_back(random_complex(rng, 1.5));
  }
  return c;
}

double decomposition_deviation(const FieldDecomposition& a, const FieldDecomposition& b,
                               Detection detection) {
  double worst = max_abs_difference(a.drift, b.drift);
  worst = std::max(worst, std::abs(a.observation_rate - b.observation_rate));
  if (detection == Detection::homodyne) {
    return std::max(worst, max_abs_difference(a.diffusion, b.diffusion));
  }
  if (a.has_jump_target != b.has_jump_target) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.has_jump_target) {
    worst = std::max(worst, max_abs_difference(a.jump_target, b.jump_target));
  }
  return worst;
}

std::vector<std::string> validation_check_names() {
  return {"algebra.pauli_products",
          "oracle.vacuum_hd",
          "oracle.vacuum_pd",
          "oracle.single_photon_hd",
          "oracle.single_photon_pd",
          "oracle.cat_hd",
          "oracle.cat_pd",
          "degeneration.single_photon_zero_field",
          "degeneration.cat_zero_field",
          "fixed_point.vacuum_ground",
          "normalization.single_photon",
          "normalization.cat",
          "purity.unconditioned.vacuum",
          "purity.unconditioned.single_photon",
          "purity.unconditioned.cat",
          "purity.conditioned_hd.vacuum",
          "purity.conditioned_hd.single_photon",
          "purity.conditioned_hd.cat"};
}

std::vector<CheckResult> run_validation(const ValidationOptions& opt) {
  std::vector<CheckResult> out;
  out.push_back(pauli_check());
  out.push_back(oracle_check("oracle.vacuum_hd", opt, Detection::homodyne, vacuum_maker, 1));
  out.push_back(oracle_check("oracle.vacuum_pd", opt, Detection::photon_counting, vacuum_maker, 2));
  out.push_back(oracle_check("oracle.single_photon_hd", opt, Detection::homodyne, photon_maker, 3));
  out.push_back(
      oracle_check("oracle.single_photon_pd", opt, Detection::photon_counting, photon_maker, 4));
  out.push_back(oracle_check("oracle.cat_hd", opt, Detection::homodyne, cat_maker, 5));
  out.push_back(oracle_check("oracle.cat_pd", opt, Detection::photon_counting, cat_maker, 6));
  out.push_back(degeneration_check(opt, true));
  out.push_back(degeneration_check(opt, false));
  out.push_back(fixed_point_check(opt));
  out.push_back(normalization_check(opt, true));
  out.push_back(normalization_check(opt, false));
  for (bool conditioned : {false, true}) {
    for (InputKind k : {InputKind::vacuum, InputKind::single_photon, InputKind::cat}) {
      out.push_back(purity_check(opt, k, conditioned));
    }
  }
  return out;
}

}  // namespace qfilter
