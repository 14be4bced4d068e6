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

#include "qfilter/purity.hpp"

#include <cmath>

#include "qfilter/error.hpp"
#include "qfilter/filters.hpp"

namespace qfilter {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Ops {
  Operator2 s, sd, l, ld;
};

Ops ops_of(const SystemTriple& g) {
  return {g.scattering, g.scattering.adjoint(), g.coupling, g.coupling.adjoint()};
}

Operator2 physical_density(const BlockState& s, InputKind kind) {
  switch (kind) {
    case InputKind::vacuum:
      return block_matrix(s[0]);
    case InputKind::single_photon:
      return block_matrix(s(1, 1));
    case InputKind::cat: {
      Operator2 rho = Operator2::Zero();
      for (const auto& b : s) {
        rho += block_matrix(b);
      }
      return rho;
    }
  }
  return Operator2::Zero();
}

// 4 Tr[rho drho/dt] split into Lindblad and field-driven parts.
cplx unconditioned_trace(const Ops& o, const BlockState& s, const FieldSample& f) {
  const Operator2 rho = physical_density(s, f.kind);
  cplx tr = (commutator(rho, o.l) * rho * o.ld).trace();
  switch (f.kind) {
    case InputKind::vacuum:
      break;
    case InputKind::single_photon: {
      const Operator2 r11 = block_matrix(s(1, 1));
      const Operator2 r10 = block_matrix(s(1, 0));
      const Operator2 r01 = block_matrix(s(0, 1));
      const Operator2 r00 = block_matrix(s(0, 0));
      const cplx xi = f.xi;
      tr += (commutator(o.ld, r11) * o.s * r10).trace() * xi;
      tr += (commutator(r11, o.l) * r01 * o.sd).trace() * std::conj(xi);
      tr += ((o.s * r00 * o.sd - r00) * r11).trace() * std::norm(xi);
      break;
    }
    case InputKind::cat: {
      const std::size_t n = f.alpha.size();
      for (std::size_t i = 0; i < n; ++i) {
        const cplx ai = std::conj(f.alpha[i]);
        for (std::size_t j = 0; j < n; ++j) {
          const cplx aj = f.alpha[j];
          const Operator2 r = block_matrix(s(i, j));
          const Operator2 d = commutator(o.l, r * o.sd) * ai + commutator(o.s * r, o.ld) * aj +
                              (o.s * r * o.sd - r) * (ai * aj);
          tr += (rho * d).trace();
        }
      }
      break;
    }
  }
  return 4.0 * tr;
}

// dW coefficient of d(rho) for the physical density operator.
Operator2 innovation_gain(const Ops& o, const BlockState& s, const FieldSample& f) {
  switch (f.kind) {
    case InputKind::vacuum: {
      const Operator2 rho = block_matrix(s[0]);
      const cplx k = ((o.l + o.ld) * rho).trace();
      return o.l * rho + rho * o.ld - k * rho;
    }
    case InputKind::single_photon: {
      const Operator2 r11 = block_matrix(s(1, 1));
      const Operator2 r10 = block_matrix(s(1, 0));
      const Operator2 r01 = block_matrix(s(0, 1));
      const cplx xi = f.xi;
      const cplx xc = std::conj(xi);
      const cplx k = ((o.l + o.ld) * r11).trace() + (o.s * r01).trace() * xi +
                     (o.sd * r10).trace() * xc;
      return o.l * r11 + r11 * o.ld + r01 * o.sd * xc + o.s * r10 * xi - k * r11;
    }
    case InputKind::cat: {
      const std::size_t n = f.alpha.size();
      Operator2 h = Operator2::Zero();
      Operator2 rho = Operator2::Zero();
      cplx k;
      for (std::size_t i = 0; i < n; ++i) {
        const cplx ai = std::conj(f.alpha[i]);
        for (std::size_t j = 0; j < n; ++j) {
          const cplx aj = f.alpha[j];
          const Operator2 r = block_matrix(s(i, j));
          h += o.l * r + r * o.ld + o.s * r * aj + r * o.sd * ai;
          k += ((o.l + o.ld + o.s * aj + o.sd * ai) * r).trace();
          rho += r;
        }
      }
      return h - k * rho;
    }
  }
  return Operator2::Zero();
}

Block physical_block(const BlockState& s, InputKind kind) {
  switch (kind) {
    case InputKind::vacuum:
      return s[0];
    case InputKind::single_photon:
      return s(1, 1);
    case InputKind::cat: {
      Block sum;
      for (const auto& b : s) {
        sum += b;
      }
      return sum;
    }
  }
  return {};
}

}  // namespace

double purity_rate_general_unconditioned(const SystemTriple& g, const BlockState& s,
                                         const FieldSample& field) {
  return unconditioned_trace(ops_of(g), s, field).real();
}

double purity_rate_general_conditioned_hd(const SystemTriple& g, const BlockState& s,
                                          const FieldSample& field) {
  const Ops o = ops_of(g);
  const Operator2 h = innovation_gain(o, s, field);
  return unconditioned_trace(o, s, field).real() + 2.0 * (h * h).trace().real();
}

double purity_rate_qubit_me(const BlockState& s, const FieldSample& field, double gamma) {
  const double sg = std::sqrt(gamma);
  switch (field.kind) {
    case InputKind::vacuum: {
      const BlochVector b = physical_expectation(field.kind, s);
      const double p = b.norm_squared();
      return -gamma * (p + b.z * b.z + 2.0 * b.z);
    }
    case InputKind::single_photon: {
      const Block& b11 = s(1, 1);
      const Block& b10 = s(1, 0);
      const double x = b11.x.real(), y = b11.y.real(), z = b11.z.real();
      const double p = x * x + y * y + z * z;
      const cplx cross = ((x + kI * y) * b10.z - (b10.x + kI * b10.y) * z) * field.xi;
      return -gamma * (p + z * z + 2.0 * z) + 4.0 * sg * cross.real();
    }
    case InputKind::cat: {
      const Block tot = physical_block(s, field.kind);
      const double x = tot.x.real(), y = tot.y.real(), z = tot.z.real(), c = tot.c.real();
      const double p = x * x + y * y + z * z;
      const std::size_t n = field.alpha.size();
      cplx sum;
      for (std::size_t i = 0; i < n; ++i) {
        const cplx ai = std::conj(field.alpha[i]);
        for (std::size_t j = 0; j < n; ++j) {
          const cplx aj = field.alpha[j];
          const Block& b = s(i, j);
          sum += b.z * ((x - kI * y) * ai + (x + kI * y) * aj) -
                 z * ((b.x - kI * b.y) * ai + (b.x + kI * b.y) * aj);
        }
      }
      return -gamma * (p + z * z + 2.0 * c * z) + 2.0 * sg * sum.real();
    }
  }
  return 0.0;
}

double purity_rate_qubit_hd(const BlockState& s, const FieldSample& field, const SystemTriple& g) {
  if (field.kind == InputKind::vacuum) {
    const BlochVector b = physical_expectation(field.kind, s);
    return g.gamma * (b.norm_squared() - 1.0) * (b.x * b.x - 1.0);
  }
  FieldDecomposition f;
  if (field.kind == InputKind::single_photon) {
    photon_hd_fields(s, field.xi, g, f);
  } else {
    cat_hd_fields(s, field.alpha, g, f);
  }
  const Block d = physical_block(f.diffusion, field.kind);
  const double dx = d.x.real(), dy = d.y.real(), dz = d.z.real();
  return purity_rate_qubit_me(s, field, g.gamma) + dx * dx + dy * dy + dz * dz;
}

double purity_rate_photon_hd_published(const BlockState& s, cplx xi, double gamma) {
  const double sg = std::sqrt(gamma);
  const Block& b11 = s(1, 1);
  const Block& b10 = s(1, 0);
  const Block& b01 = s(0, 1);
  const cplx x11 = b11.x, y11 = b11.y, z11 = b11.z;
  const double p = std::norm(x11) + std::norm(y11) + std::norm(z11);
  const cplx k = sg * x11 + b01.c * xi + b10.c * std::conj(xi);
  const cplx rate =
      2.0 * (k * k - gamma) * p + 2.0 * gamma * (1.0 + x11 * x11 - 2.0 * sg * x11 * k) +
      4.0 * ((b10.x * b10.x + b10.y * b10.y + b10.z * b10.z) * xi * xi).real() +
      4.0 * (std::abs(b01.x) + std::abs(b01.y) + std::abs(b01.z)) * std::norm(xi) +
      4.0 * (sg * b10.x - b10.x * x11 * k - b10.y * y11 * k - b10.z * z11 * k +
             kI * sg * y11 * b10.z - kI * sg * z11 * b10.y)
                .real();
  return rate.real();
}

PuritySeries empirical_conditioned_purity(std::span<const TrajectoryRecord> records) {
  if (records.size() < 2) {
    throw InvalidInput("empirical purity needs at least two trajectories");
  }
  const auto& grid = records.front().times;
  for (const auto& r : records) {
    if (r.times != grid || r.purity.size() != grid.size()) {
      throw AlignmentError("trajectory records do not share a time grid");
    }
  }
  const auto n = static_cast<double>(records.size());
  PuritySeries out;
  out.times = grid;
  out.mean.resize(grid.size());
  out.standard_error.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double sum = 0.0;
    for (const auto& r : records) {
      sum += r.purity[k];
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : records) {
      const double d = r.purity[k] - mean;
      ss += d * d;
    }
    out.mean[k] = mean;
    out.standard_error[k] = std::sqrt(ss / (n - 1.0) / n);
  }
  return out;
}

}  // namespace qfilter
