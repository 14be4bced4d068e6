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

// Driving-field models: vacuum, a single photon in a Gaussian wavepacket, and
// superpositions of continuous-mode coherent states.

#pragma once

#include <span>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "qfilter/qubit_algebra.hpp"

namespace qfilter {

// xi(t) = (bandwidth^2 / 2 pi)^(1/4) exp(-bandwidth^2 (t - t_center)^2 / 4), unit L2 norm.
struct GaussianWavepacket {
  double bandwidth = 1.5;
  double t_center = 3.0;

  cplx value(double t) const;
};

// Trapezoid estimate of the integral of |xi|^2 on the grid t0, t0 + dt, ..., t1.
double wavepacket_norm_squared(const GaussianWavepacket& w, double t0, double t1, double dt);

struct PulseSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  cplx value;
};

// Piecewise-constant amplitude. Segments are half-open [t_start, t_end),
// sorted and disjoint; the amplitude is zero outside all of them.
class PulseAmplitude {
 public:
  PulseAmplitude() = default;
  explicit PulseAmplitude(std::vector<PulseSegment> segments);

  static PulseAmplitude constant(double t_start, double t_end, cplx value);

  cplx operator()(double t) const;
  std::span<const PulseSegment> segments() const { return segments_; }

  // Closed-form <a, b> = integral of conj(a(s)) b(s) ds.
  friend cplx inner_product(const PulseAmplitude& a, const PulseAmplitude& b);
  double norm_squared() const { return inner_product(*this, *this).real(); }

 private:
  std::vector<PulseSegment> segments_;
};

// <alpha_i|alpha_j> = exp(-|alpha_i|^2/2 - |alpha_j|^2/2 + <alpha_i, alpha_j>).
cplx coherent_overlap(const PulseAmplitude& alpha_i, const PulseAmplitude& alpha_j);

using OverlapMatrix = Eigen::MatrixXcd;

struct CatWeights {
  std::vector<cplx> weights;
  double norm_a = 0.0;  // sum_i |s_i|^2
};

// Rescales raw weights so that sum_ij conj(s_i) s_j g_ij = 1. Throws
// InvalidInput when that quadratic form is not strictly positive.
CatWeights normalize_cat_weights(std::span<const cplx> raw, const OverlapMatrix& overlaps);

// sum_j s_j |alpha_j> with exact overlap normalization.
class CatStateInput {
 public:
  CatStateInput(std::vector<cplx> raw_weights, std::vector<PulseAmplitude> amplitudes);

  std::size_t branches() const { return amplitudes_.size(); }
  std::span<const cplx> weights() const { return weights_; }
  std::span<const cplx> raw_weights() const { return raw_weights_; }
  std::span<const PulseAmplitude> amplitudes() const { return amplitudes_; }
  const OverlapMatrix& overlaps() const { return overlaps_; }
  double norm_a() const { return norm_a_; }

  // Amplitudes of every branch at time t.
  std::vector<cplx> amplitudes_at(double t) const;
  void amplitudes_at(double t, std::vector<cplx>& out) const;

  // sum_ij conj(s_i) s_j g_ij, 1 up to rounding.
  cplx normalization() const;

 private:
  std::vector<cplx> raw_weights_;
  std::vector<cplx> weights_;
  std::vector<PulseAmplitude> amplitudes_;
  OverlapMatrix overlaps_;
  double norm_a_ = 0.0;
};

struct VacuumInput {};

struct SinglePhotonInput {
  GaussianWavepacket wavepacket;
};

using FieldInput = std::variant<VacuumInput, SinglePhotonInput, CatStateInput>;

enum class InputKind { vacuum, single_photon, cat };

InputKind kind_of(const FieldInput& input);
const char* to_string(InputKind kind);

// Field amplitudes evaluated at one instant, the form the filters consume.
struct FieldSample {
  InputKind kind = InputKind::vacuum;
  cplx xi;                  // single photon
  std::vector<cplx> alpha;  // one entry per cat branch
};

FieldSample sample_field(const FieldInput& input, double t);
void sample_field(const FieldInput& input, double t, FieldSample& out);

}  // namespace qfilter
