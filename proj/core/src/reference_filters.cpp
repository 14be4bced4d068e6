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

#include "qfilter/reference_filters.hpp"

#include <array>
#include <functional>

#include "qfilter/error.hpp"

namespace qfilter {

namespace {

using OpMap = std::function<Operator2(const Operator2&)>;

const std::array<Operator2, 4>& basis() {
  static const std::array<Operator2, 4> ops = {pauli(Pauli::identity), pauli(Pauli::x),
                                               pauli(Pauli::y), pauli(Pauli::z)};
  return ops;
}

cplx pi(const Block& b, const Operator2& y) { return (y * block_matrix(b)).trace(); }

// Applies pi_b(f(X)) for each X of the basis.
Block apply(const Block& b, const OpMap& f) {
  const auto& x = basis();
  return {pi(b, f(x[0])), pi(b, f(x[1])), pi(b, f(x[2])), pi(b, f(x[3]))};
}

struct Ops {
  Operator2 s, sd, l, ld;
  const SystemTriple* g;

  Operator2 gen(const Operator2& x) const { return lindblad_generator(*g, x); }
  Operator2 lower(const Operator2& x) const { return sd * commutator(x, l); }      // S^dag [X, L]
  Operator2 raise(const Operator2& x) const { return commutator(ld, x) * s; }      // [L^dag, X] S
  Operator2 scatter(const Operator2& x) const { return sd * x * s - x; }           // S^dag X S - X
  Operator2 quad(const Operator2& x) const { return x * l + ld * x; }              // X L + L^dag X
};

Ops make_ops(const SystemTriple& g) {
  return {g.scattering, g.scattering.adjoint(), g.coupling, g.coupling.adjoint(), &g};
}

void size_output(FieldDecomposition& out, std::size_t n) {
  out.drift = BlockState(n);
  out.diffusion = BlockState(n);
  out.jump_target = BlockState(n);
}

void set_rate(FieldDecomposition& out, double nu) {
  out.raw_rate = nu;
  out.rate_clamped = nu < 0.0;
  out.observation_rate = nu < 0.0 ? 0.0 : nu;
  if (nu > 0.0) {
    for (auto& b : out.jump_target) {
      b *= 1.0 / nu;
    }
    out.has_jump_target = true;
  }
}

void vacuum(const Ops& o, const BlockState& s, Detection d, FieldDecomposition& out) {
  const Block& b = s[0];
  out.drift[0] = apply(b, [&](const Operator2& x) { return o.gen(x); });
  if (d == Detection::homodyne) {
    const cplx k = pi(b, o.l + o.ld);
    out.diffusion[0] = apply(b, [&](const Operator2& x) { return o.quad(x); }) - b * k;
    out.observation_rate = out.raw_rate = k.real();
  } else {
    out.jump_target[0] = apply(b, [&](const Operator2& x) { return Operator2(o.ld * x * o.l); });
    set_rate(out, pi(b, o.ld * o.l).real());
  }
}

void single_photon(const Ops& o, const BlockState& s, cplx xi, Detection d,
                   FieldDecomposition& out) {
  const cplx xc = std::conj(xi);
  const double xi2 = std::norm(xi);
  const Block &b11 = s(1, 1), &b10 = s(1, 0), &b01 = s(0, 1), &b00 = s(0, 0);
  auto gen = [&](const Operator2& x) { return o.gen(x); };
  auto lower = [&](const Operator2& x) { return o.lower(x); };
  auto raise = [&](const Operator2& x) { return o.raise(x); };
  auto scatter = [&](const Operator2& x) { return o.scatter(x); };

  out.drift(1, 1) = apply(b11, gen) + apply(b01, lower) * xc + apply(b10, raise) * xi +
                    apply(b00, scatter) * xi2;
  out.drift(1, 0) = apply(b10, gen) + apply(b00, lower) * xc;
  out.drift(0, 1) = apply(b01, gen) + apply(b00, raise) * xi;
  out.drift(0, 0) = apply(b00, gen);

  if (d == Detection::homodyne) {
    auto quad = [&](const Operator2& x) { return o.quad(x); };
    auto sdx = [&](const Operator2& x) { return Operator2(o.sd * x); };
    auto xs = [&](const Operator2& x) { return Operator2(x * o.s); };
    const cplx k = pi(b11, o.l + o.ld) + pi(b01, o.s) * xi + pi(b10, o.sd) * xc;
    out.diffusion(1, 1) = apply(b11, quad) + apply(b01, sdx) * xc + apply(b10, xs) * xi - b11 * k;
    out.diffusion(1, 0) = apply(b10, quad) + apply(b00, sdx) * xc - b10 * k;
    out.diffusion(0, 1) = apply(b01, quad) + apply(b00, xs) * xi - b01 * k;
    out.diffusion(0, 0) = apply(b00, quad) - b00 * k;
    out.observation_rate = out.raw_rate = k.real();
    return;
  }

  auto emit = [&](const Operator2& x) { return Operator2(o.ld * x * o.l); };
  auto sdxl = [&](const Operator2& x) { return Operator2(o.sd * x * o.l); };
  auto ldxs = [&](const Operator2& x) { return Operator2(o.ld * x * o.s); };
  auto sdxs = [&](const Operator2& x) { return Operator2(o.sd * x * o.s); };
  out.jump_target(1, 1) = apply(b11, emit) + apply(b01, sdxl) * xc + apply(b10, ldxs) * xi +
                          apply(b00, sdxs) * xi2;
  out.jump_target(1, 0) = apply(b10, emit) + apply(b00, sdxl) * xc;
  out.jump_target(0, 1) = apply(b01, emit) + apply(b00, ldxs) * xi;
  out.jump_target(0, 0) = apply(b00, emit);
  const cplx nu = pi(b11, o.ld * o.l) + pi(b10, o.ld * o.s) * xi + pi(b01, o.sd * o.l) * xc +
                  b00.c * xi2;
  set_rate(out, nu.real());
}

void cat(const Ops& o, const BlockState& s, std::span<const cplx> alpha, Detection d,
         FieldDecomposition& out) {
  const std::size_t n = alpha.size();
  cplx k;
  cplx nu;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ai = std::conj(alpha[i]);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx aj = alpha[j];
      const Block& b = s(i, j);
      auto gen = [&](const Operator2& x) {
        return Operator2(o.gen(x) + o.lower(x) * ai + o.raise(x) * aj + o.scatter(x) * (ai * aj));
      };
      out.drift(i, j) = apply(b, gen);
      if (d == Detection::homodyne) {
        auto h = [&](const Operator2& x) {
          return Operator2(x * o.l + o.ld * x + x * o.s * aj + o.sd * x * ai);
        };
        out.diffusion(i, j) = apply(b, h);
        k += pi(b, o.l + o.ld + o.s * aj + o.sd * ai);
      } else {
        auto num = [&](const Operator2& x) {
          return Operator2(o.ld * x * o.l + o.ld * x * o.s * aj + o.sd * x * o.l * ai +
                           o.sd * x * o.s * (ai * aj));
        };
        out.jump_target(i, j) = apply(b, num);
        nu += pi(b, o.ld * o.l + o.ld * o.s * aj + o.sd * o.l * ai +
                        Operator2::Identity() * (ai * aj));
      }
    }
  }
  if (d == Detection::homodyne) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      out.diffusion[i] -= s[i] * k;
    }
    out.observation_rate = out.raw_rate = k.real();
  } else {
    set_rate(out, nu.real());
  }
}

}  // namespace

FieldDecomposition reference_fields(const SystemTriple& g, const BlockState& s,
                                    const FieldSample& field, Detection detection) {
  FieldDecomposition out;
  out.sample = field;
  size_output(out, s.branches());
  const Ops o = make_ops(g);
  switch (field.kind) {
    case InputKind::vacuum:
      if (s.branches() != 1) {
        throw InvalidInput("vacuum reference filter needs one block");
      }
      vacuum(o, s, detection, out);
      break;
    case InputKind::single_photon:
      if (s.branches() != 2) {
        throw InvalidInput("single-photon reference filter needs 2x2 blocks");
      }
      single_photon(o, s, field.xi, detection, out);
      break;
    case InputKind::cat:
      if (s.branches() != field.alpha.size()) {
        throw InvalidInput("cat reference filter: block count does not match branches");
      }
      cat(o, s, field.alpha, detection, out);
      break;
  }
  return out;
}

}  // namespace qfilter
