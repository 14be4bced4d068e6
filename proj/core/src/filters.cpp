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

#include "qfilter/filters.hpp"

#include <cmath>

#include "qfilter/error.hpp"

namespace qfilter {

namespace {

constexpr cplx kI{0.0, 1.0};

// Each helper returns pi(Y) for Y built from X = I, sx, sy, sz, evaluated on a
// single block; g = sqrt(gamma), g2 = gamma.

// pi(Lindblad generator X)
Block lindblad(const Block& b, double g2, double w) {
  return {0.0, -w * b.y - 0.5 * g2 * b.x, w * b.x - 0.5 * g2 * b.y, -g2 * (b.c + b.z)};
}

// pi(S^dag [X, L]), S = I
Block lower_commutator(const Block& b, double g) {
  return {0.0, g * b.z, -kI * g * b.z, -g * (b.x - kI * b.y)};
}

// pi([L^dag, X] S), S = I
Block raise_commutator(const Block& b, double g) {
  return {0.0, g * b.z, kI * g * b.z, -g * (b.x + kI * b.y)};
}

// pi(X L + L^dag X)
Block quadrature(const Block& b, double g) {
  return {g * b.x, g * (b.c + b.z), 0.0, -g * b.x};
}

// pi(L^dag X L)
Block emission(const Block& b, double g2) {
  const cplx e = 0.5 * g2 * (b.c + b.z);
  return {e, 0.0, 0.0, -e};
}

// pi(S^dag X L)
Block right_lower(const Block& b, double g) {
  const cplx m = 0.5 * g * (b.x - kI * b.y);
  const cplx e = 0.5 * g * (b.c + b.z);
  return {m, e, -kI * e, -m};
}

// pi(L^dag X S)
Block left_raise(const Block& b, double g) {
  const cplx p = 0.5 * g * (b.x + kI * b.y);
  const cplx e = 0.5 * g * (b.c + b.z);
  return {p, e, kI * e, -p};
}

void reshape(FieldDecomposition& out, std::size_t n, Detection d) {
  if (out.drift.branches() != n) {
    out.drift = BlockState(n);
  }
  if (d == Detection::homodyne) {
    if (out.diffusion.branches() != n) {
      out.diffusion = BlockState(n);
    }
  } else if (out.jump_target.branches() != n) {
    out.jump_target = BlockState(n);
  }
  out.has_jump_target = false;
  out.rate_clamped = false;
}

void expect_branches(const BlockState& s, std::size_t n, const char* filter) {
  if (s.branches() != n) {
    throw InvalidInput(std::string(filter) + ": unexpected number of blocks");
  }
}

// Sets rate and target = numerator / rate. The numerator is written into
// out.jump_target in place.
void finish_counting(FieldDecomposition& out, double nu) {
  out.raw_rate = nu;
  out.rate_clamped = nu < 0.0;
  out.observation_rate = nu < 0.0 ? 0.0 : nu;
  if (nu > 0.0) {
    const double inv = 1.0 / nu;
    for (auto& b : out.jump_target) {
      b *= inv;
    }
    out.has_jump_target = true;
  }
}

}  // namespace

const char* to_string(Detection d) {
  return d == Detection::homodyne ? "homodyne" : "photon_counting";
}

const BlockState& jump_state(const FieldDecomposition& f) {
  if (!f.has_jump_target) {
    throw DegenerateJump("detection requested from a state with non-positive counting rate");
  }
  return f.jump_target;
}

void vacuum_hd_fields(const BlockState& s, const SystemTriple& g, FieldDecomposition& out) {
  expect_branches(s, 1, "vacuum filter");
  reshape(out, 1, Detection::homodyne);
  const double sg = std::sqrt(g.gamma);
  const Block& b = s[0];
  const double k = sg * b.x.real();
  out.drift[0] = lindblad(b, g.gamma, g.omega);
  out.diffusion[0] = quadrature(b, sg) - b * k;
  out.observation_rate = k;
  out.raw_rate = k;
}

void vacuum_pd_fields(const BlockState& s, const SystemTriple& g, FieldDecomposition& out) {
  expect_branches(s, 1, "vacuum filter");
  reshape(out, 1, Detection::photon_counting);
  const Block& b = s[0];
  out.drift[0] = lindblad(b, g.gamma, g.omega);
  const double nu = 0.5 * g.gamma * (b.c + b.z).real();
  out.raw_rate = nu;
  out.rate_clamped = nu < 0.0;
  out.observation_rate = nu < 0.0 ? 0.0 : nu;
  // Every detection resets to the ground state; no division needed.
  out.jump_target[0] = Block{1.0, 0.0, 0.0, -1.0};
  out.has_jump_target = nu > 0.0;
}

FieldDecomposition vacuum_hd_fields(const BlochVector& b, const SystemTriple& g) {
  BlockState s(1);
  s[0] = Block::from_bloch(b);
  FieldDecomposition out;
  vacuum_hd_fields(s, g, out);
  return out;
}

FieldDecomposition vacuum_pd_fields(const BlochVector& b, const SystemTriple& g) {
  BlockState s(1);
  s[0] = Block::from_bloch(b);
  FieldDecomposition out;
  vacuum_pd_fields(s, g, out);
  return out;
}

void photon_hd_fields(const BlockState& s, cplx xi, const SystemTriple& g, FieldDecomposition& out) {
  expect_branches(s, 2, "single-photon filter");
  reshape(out, 2, Detection::homodyne);
  const double sg = std::sqrt(g.gamma);
  const cplx xc = std::conj(xi);
  const Block& b11 = s(1, 1);
  const Block& b10 = s(1, 0);
  const Block& b01 = s(0, 1);
  const Block& b00 = s(0, 0);

  const cplx k = sg * b11.x + b01.c * xi + b10.c * xc;

  out.drift(1, 1) = lindblad(b11, g.gamma, g.omega) + lower_commutator(b01, sg) * xc +
                    raise_commutator(b10, sg) * xi;
  out.drift(1, 0) = lindblad(b10, g.gamma, g.omega) + lower_commutator(b00, sg) * xc;
  out.drift(0, 0) = lindblad(b00, g.gamma, g.omega);
  out.drift(0, 1) = out.drift(1, 0).conj();

  out.diffusion(1, 1) = quadrature(b11, sg) + b01 * xc + b10 * xi - b11 * k;
  out.diffusion(1, 0) = quadrature(b10, sg) + b00 * xc - b10 * k;
  out.diffusion(0, 0) = quadrature(b00, sg) - b00 * k;
  out.diffusion(0, 1) = out.diffusion(1, 0).conj();

  out.observation_rate = k.real();
  out.raw_rate = k.real();
}

void photon_pd_fields(const BlockState& s, cplx xi, const SystemTriple& g, FieldDecomposition& out) {
  expect_branches(s, 2, "single-photon filter");
  reshape(out, 2, Detection::photon_counting);
  const double sg = std::sqrt(g.gamma);
  const cplx xc = std::conj(xi);
  const double xi2 = std::norm(xi);
  const Block& b11 = s(1, 1);
  const Block& b10 = s(1, 0);
  const Block& b01 = s(0, 1);
  const Block& b00 = s(0, 0);

  out.drift(1, 1) = lindblad(b11, g.gamma, g.omega) + lower_commutator(b01, sg) * xc +
                    raise_commutator(b10, sg) * xi;
  out.drift(1, 0) = lindblad(b10, g.gamma, g.omega) + lower_commutator(b00, sg) * xc;
  out.drift(0, 0) = lindblad(b00, g.gamma, g.omega);
  out.drift(0, 1) = out.drift(1, 0).conj();

  auto& n = out.jump_target;
  n(1, 1) = emission(b11, g.gamma) + right_lower(b01, sg) * xc + left_raise(b10, sg) * xi +
            b00 * xi2;
  n(1, 0) = emission(b10, g.gamma) + right_lower(b00, sg) * xc;
  n(0, 0) = emission(b00, g.gamma);
  n(0, 1) = n(1, 0).conj();

  finish_counting(out, n(1, 1).c.real());
}

void cat_hd_fields(const BlockState& s, std::span<const cplx> alpha, const SystemTriple& g,
                   FieldDecomposition& out) {
  const std::size_t n = alpha.size();
  expect_branches(s, n, "cat-state filter");
  reshape(out, n, Detection::homodyne);
  const double sg = std::sqrt(g.gamma);

  cplx k;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Block& b = s(i, j);
      k += sg * b.x + b.c * (alpha[j] + std::conj(alpha[i]));
    }
  }
  const double kr = k.real();

  for (std::size_t i = 0; i < n; ++i) {
    const cplx ai = std::conj(alpha[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const Block& b = s(i, j);
      out.drift(i, j) = lindblad(b, g.gamma, g.omega) + lower_commutator(b, sg) * ai +
                        raise_commutator(b, sg) * alpha[j];
      out.diffusion(i, j) = quadrature(b, sg) + b * (alpha[j] + ai - kr);
    }
  }
  out.observation_rate = kr;
  out.raw_rate = kr;
}

void cat_pd_fields(const BlockState& s, std::span<const cplx> alpha, const SystemTriple& g,
                   FieldDecomposition& out) {
  const std::size_t n = alpha.size();
  expect_branches(s, n, "cat-state filter");
  reshape(out, n, Detection::photon_counting);
  const double sg = std::sqrt(g.gamma);

  cplx nu;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ai = std::conj(alpha[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const Block& b = s(i, j);
      out.drift(i, j) = lindblad(b, g.gamma, g.omega) + lower_commutator(b, sg) * ai +
                        raise_commutator(b, sg) * alpha[j];
      Block& num = out.jump_target(i, j);
      num = emission(b, g.gamma) + left_raise(b, sg) * alpha[j] + right_lower(b, sg) * ai +
            b * (ai * alpha[j]);
      nu += num.c;
    }
  }
  finish_counting(out, nu.real());
}

void me_drift(const BlockState& s, const FieldSample& field, const SystemTriple& g, BlockState& out) {
  const double sg = std::sqrt(g.gamma);
  if (out.branches() != s.branches()) {
    out = BlockState(s.branches());
  }
  switch (field.kind) {
    case InputKind::vacuum:
      expect_branches(s, 1, "vacuum filter");
      out[0] = lindblad(s[0], g.gamma, g.omega);
      return;
    case InputKind::single_photon: {
      expect_branches(s, 2, "single-photon filter");
      const cplx xi = field.xi;
      const cplx xc = std::conj(xi);
      out(1, 1) = lindblad(s(1, 1), g.gamma, g.omega) + lower_commutator(s(0, 1), sg) * xc +
                  raise_commutator(s(1, 0), sg) * xi;
      out(1, 0) = lindblad(s(1, 0), g.gamma, g.omega) + lower_commutator(s(0, 0), sg) * xc;
      out(0, 0) = lindblad(s(0, 0), g.gamma, g.omega);
      out(0, 1) = out(1, 0).conj();
      return;
    }
    case InputKind::cat: {
      const std::size_t n = field.alpha.size();
      expect_branches(s, n, "cat-state filter");
      for (std::size_t i = 0; i < n; ++i) {
        const cplx ai = std::conj(field.alpha[i]);
        for (std::size_t j = 0; j < n; ++j) {
          const Block& b = s(i, j);
          out(i, j) = lindblad(b, g.gamma, g.omega) + lower_commutator(b, sg) * ai +
                      raise_commutator(b, sg) * field.alpha[j];
        }
      }
      return;
    }
  }
}

QubitFilter::QubitFilter(SystemTriple system, FieldInput input, Detection detection)
    : system_(std::move(system)), input_(std::move(input)), detection_(detection) {
  system_.validate();
}

void QubitFilter::fields(double t, const BlockState& s, FieldDecomposition& out) const {
  sample_field(input_, t, out.sample);
  const bool hd = detection_ == Detection::homodyne;
  switch (out.sample.kind) {
    case InputKind::vacuum:
      hd ? vacuum_hd_fields(s, system_, out) : vacuum_pd_fields(s, system_, out);
      return;
    case InputKind::single_photon:
      hd ? photon_hd_fields(s, out.sample.xi, system_, out)
         : photon_pd_fields(s, out.sample.xi, system_, out);
      return;
    case InputKind::cat:
      hd ? cat_hd_fields(s, out.sample.alpha, system_, out)
         : cat_pd_fields(s, out.sample.alpha, system_, out);
      return;
  }
}

void QubitFilter::drift(double t, const BlockState& s, BlockState& out) const {
  me_drift(s, sample_field(input_, t), system_, out);
}

BlockState QubitFilter::initial_state(const BlochVector& b0) const {
  return initial_blocks(input_, b0);
}

BlochVector QubitFilter::expectation(const BlockState& s) const {
  return physical_expectation(kind_of(input_), s);
}

cplx QubitFilter::normalization(const BlockState& s) const {
  return physical_normalization(kind_of(input_), s);
}

BlockState initial_blocks(const FieldInput& input, const BlochVector& b0) {
  switch (kind_of(input)) {
    case InputKind::vacuum: {
      BlockState s(1);
      s[0] = Block::from_bloch(b0);
      return s;
    }
    case InputKind::single_photon: {
      BlockState s(2);
      s(1, 1) = Block::from_bloch(b0);
      s(0, 0) = Block::from_bloch(b0);
      return s;
    }
    case InputKind::cat: {
      const auto& cat = std::get<CatStateInput>(input);
      const auto w = cat.weights();
      const std::size_t n = cat.branches();
      BlockState s(n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const auto ii = static_cast<Eigen::Index>(i);
          const auto jj = static_cast<Eigen::Index>(j);
          s(i, j) = Block::from_bloch(b0, std::conj(w[i]) * w[j] * cat.overlaps()(ii, jj));
        }
      }
      return s;
    }
  }
  throw InvalidInput("unknown input kind");
}

BlochVector physical_expectation(InputKind kind, const BlockState& s) {
  Block sum;
  switch (kind) {
    case InputKind::vacuum:
      sum = s[0];
      break;
    case InputKind::single_photon:
      sum = s(1, 1);
      break;
    case InputKind::cat:
      for (const auto& b : s) {
        sum += b;
      }
      break;
  }
  return {sum.x.real(), sum.y.real(), sum.z.real()};
}

cplx physical_normalization(InputKind kind, const BlockState& s) {
  switch (kind) {
    case InputKind::vacuum:
      return s[0].c;
    case InputKind::single_photon:
      return s(1, 1).c;
    case InputKind::cat: {
      cplx sum;
      for (const auto& b : s) {
        sum += b.c;
      }
      return sum;
    }
  }
  return {};
}

}  // namespace qfilter
