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

#include "qfilter/field_inputs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfilter/error.hpp"

namespace qfilter {

cplx GaussianWavepacket::value(double t) const {
  const double amplitude = std::pow(bandwidth * bandwidth / (2.0 * std::numbers::pi), 0.25);
  const double offset = t - t_center;
  return amplitude * std::exp(-0.25 * bandwidth * bandwidth * offset * offset);
}

double wavepacket_norm_squared(const GaussianWavepacket& w, double t0, double t1, double dt) {
  if (!(dt > 0.0) || t1 < t0) {
    throw InvalidInput("wavepacket quadrature needs dt > 0 and t1 >= t0");
  }
  const auto steps = static_cast<std::size_t>(std::llround((t1 - t0) / dt));
  double sum = 0.0;
  for (std::size_t k = 0; k <= steps; ++k) {
    const double weight = (k == 0 || k == steps) ? 0.5 : 1.0;
    sum += weight * std::norm(w.value(t0 + static_cast<double>(k) * dt));
  }
  return sum * dt;
}

PulseAmplitude::PulseAmplitude(std::vector<PulseSegment> segments) : segments_(std::move(segments)) {
  std::sort(segments_.begin(), segments_.end(),
            [](const PulseSegment& a, const PulseSegment& b) { return a.t_start < b.t_start; });
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (!(segments_[k].t_end > segments_[k].t_start)) {
      throw InvalidInput("pulse segment must satisfy t_end > t_start");
    }
    if (k > 0 && segments_[k].t_start < segments_[k - 1].t_end) {
      throw InvalidInput("pulse segments overlap");
    }
  }
}

PulseAmplitude PulseAmplitude::constant(double t_start, double t_end, cplx value) {
  return PulseAmplitude({PulseSegment{t_start, t_end, value}});
}

cplx PulseAmplitude::operator()(double t) const {
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const PulseSegment& s) { return v < s.t_start; });
  if (it == segments_.begin()) {
    return {};
  }
  --it;
  return t < it->t_end ? it->value : cplx{};
}

cplx inner_product(const PulseAmplitude& a, const PulseAmplitude& b) {
  cplx sum;
  for (const auto& sa : a.segments_) {
    for (const auto& sb : b.segments_) {
      const double overlap = std::min(sa.t_end, sb.t_end) - std::max(sa.t_start, sb.t_start);
      if (overlap > 0.0) {
        sum += std::conj(sa.value) * sb.value * overlap;
      }
    }
  }
  return sum;
}

cplx coherent_overlap(const PulseAmplitude& alpha_i, const PulseAmplitude& alpha_j) {
  return std::exp(-0.5 * alpha_i.norm_squared() - 0.5 * alpha_j.norm_squared() +
                  inner_product(alpha_i, alpha_j));
}

CatWeights normalize_cat_weights(std::span<const cplx> raw, const OverlapMatrix& overlaps) {
  const auto n = static_cast<Eigen::Index>(raw.size());
  if (overlaps.rows() != n || overlaps.cols() != n) {
    throw InvalidInput("overlap matrix does not match the number of weights");
  }
  cplx quadratic;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      quadratic += std::conj(raw[i]) * raw[j] * overlaps(i, j);
    }
  }
  if (!(quadratic.real() > 0.0)) {
    throw InvalidInput("cat-state normalization sum is not positive");
  }
  const double scale = 1.0 / std::sqrt(quadratic.real());
  CatWeights out;
  out.weights.reserve(raw.size());
  for (const cplx& s : raw) {
    out.weights.push_back(s * scale);
    out.norm_a += std::norm(out.weights.back());
  }
  return out;
}

CatStateInput::CatStateInput(std::vector<cplx> raw_weights, std::vector<PulseAmplitude> amplitudes)
    : raw_weights_(std::move(raw_weights)), amplitudes_(std::move(amplitudes)) {
  if (raw_weights_.empty() || raw_weights_.size() != amplitudes_.size()) {
    throw InvalidInput("cat state needs one weight per amplitude and at least one branch");
  }
  const auto n = static_cast<Eigen::Index>(amplitudes_.size());
  overlaps_.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    overlaps_(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      overlaps_(i, j) = coherent_overlap(amplitudes_[i], amplitudes_[j]);
      overlaps_(j, i) = std::conj(overlaps_(i, j));
    }
  }
  auto normalized = normalize_cat_weights(raw_weights_, overlaps_);
  weights_ = std::move(normalized.weights);
  norm_a_ = normalized.norm_a;
}

std::vector<cplx> CatStateInput::amplitudes_at(double t) const {
  std::vector<cplx> out;
  amplitudes_at(t, out);
  return out;
}

void CatStateInput::amplitudes_at(double t, std::vector<cplx>& out) const {
  out.resize(amplitudes_.size());
  for (std::size_t l = 0; l < amplitudes_.size(); ++l) {
    out[l] = amplitudes_[l](t);
  }
}

cplx CatStateInput::normalization() const {
  cplx sum;
  const auto n = static_cast<Eigen::Index>(weights_.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      sum += std::conj(weights_[i]) * weights_[j] * overlaps_(i, j);
    }
  }
  return sum;
}

InputKind kind_of(const FieldInput& input) {
  return static_cast<InputKind>(input.index());
}

const char* to_string(InputKind kind) {
  switch (kind) {
    case InputKind::vacuum:
      return "vacuum";
    case InputKind::single_photon:
      return "single_photon";
    case InputKind::cat:
      return "cat";
  }
  return "unknown";
}

FieldSample sample_field(const FieldInput& input, double t) {
  FieldSample out;
  sample_field(input, t, out);
  return out;
}

void sample_field(const FieldInput& input, double t, FieldSample& out) {
  out.kind = kind_of(input);
  out.xi = {};
  if (const auto* photon = std::get_if<SinglePhotonInput>(&input)) {
    out.xi = photon->wavepacket.value(t);
    out.alpha.clear();
  } else if (const auto* cat = std::get_if<CatStateInput>(&input)) {
    cat->amplitudes_at(t, out.alpha);
  } else {
    out.alpha.clear();
  }
}

}  // namespace qfilter
