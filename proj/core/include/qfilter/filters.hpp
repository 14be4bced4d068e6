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

// Closed-form qubit filters for vacuum, single-photon and cat-state inputs under
// homodyne and photon-counting detection, plus their unconditioned drifts.
//
// Homodyne:  dpi = drift dt + diffusion dW,          dY = K dt + dW
// Counting:  dpi = drift dt + (target - pi)(dN - nu dt), dY = dN

#pragma once

#include <memory>
#include <span>

#include "qfilter/block_state.hpp"
#include "qfilter/field_inputs.hpp"
#include "qfilter/qubit_algebra.hpp"

namespace qfilter {

enum class Detection { homodyne, photon_counting };

const char* to_string(Detection d);

struct FieldDecomposition {
  BlockState drift;
  BlockState diffusion;    // per unit dW, homodyne only
  BlockState jump_target;  // state immediately after a detection, counting only
  bool has_jump_target = false;
  double observation_rate = 0.0;  // K_t (homodyne) or nu_t clamped at 0 (counting)
  double raw_rate = 0.0;          // nu_t before clamping
  bool rate_clamped = false;
  FieldSample sample;  // field amplitudes the fields were evaluated with
};

// Throws DegenerateJump when the decomposition carries no post-jump state,
// i.e. the counting rate was not strictly positive.
const BlockState& jump_state(const FieldDecomposition& f);

// Vacuum input. The state is a single block with c = 1.
void vacuum_hd_fields(const BlockState& s, const SystemTriple& g, FieldDecomposition& out);
void vacuum_pd_fields(const BlockState& s, const SystemTriple& g, FieldDecomposition& out);
FieldDecomposition vacuum_hd_fields(const BlochVector& b, const SystemTriple& g);
FieldDecomposition vacuum_pd_fields(const BlochVector& b, const SystemTriple& g);

// Single photon: 2x2 blocks, (1,1) physical. Block (0,1) is carried as the
// conjugate of block (1,0) and its increments are conjugates too.
void photon_hd_fields(const BlockState& s, cplx xi, const SystemTriple& g, FieldDecomposition& out);
void photon_pd_fields(const BlockState& s, cplx xi, const SystemTriple& g, FieldDecomposition& out);

// Superposition of coherent states with the branch weights absorbed into the
// blocks; the physical expectation is the sum over all n^2 blocks.
void cat_hd_fields(const BlockState& s, std::span<const cplx> alpha, const SystemTriple& g,
                   FieldDecomposition& out);
void cat_pd_fields(const BlockState& s, std::span<const cplx> alpha, const SystemTriple& g,
                   FieldDecomposition& out);

// Unconditioned drift; identical to the drift part of both conditioned filters.
void me_drift(const BlockState& s, const FieldSample& field, const SystemTriple& g, BlockState& out);

// Polymorphic interface consumed by the integrators.
class FilterModel {
 public:
  virtual ~FilterModel() = default;

  virtual Detection detection() const = 0;
  virtual void fields(double t, const BlockState& s, FieldDecomposition& out) const = 0;
  virtual void drift(double t, const BlockState& s, BlockState& out) const = 0;
  virtual BlockState initial_state(const BlochVector& b0) const = 0;
  // Physical Bloch vector (real parts of the physical expectation).
  virtual BlochVector expectation(const BlockState& s) const = 0;
  // Physical pi_t(I); 1 for a normalized filter.
  virtual cplx normalization(const BlockState& s) const = 0;
};

class QubitFilter final : public FilterModel {
 public:
  QubitFilter(SystemTriple system, FieldInput input, Detection detection);

  Detection detection() const override { return detection_; }
  void fields(double t, const BlockState& s, FieldDecomposition& out) const override;
  void drift(double t, const BlockState& s, BlockState& out) const override;
  BlockState initial_state(const BlochVector& b0) const override;
  BlochVector expectation(const BlockState& s) const override;
  cplx normalization(const BlockState& s) const override;

  const SystemTriple& system() const { return system_; }
  const FieldInput& input() const { return input_; }

 private:
  SystemTriple system_;
  FieldInput input_;
  Detection detection_;
};

// Initial blocks: vacuum (1, b0); single photon blocks 11 and 00 = (1, b0),
// 10 and 01 = 0; cat pi^{ij} = conj(s_i) s_j g_ij (1, b0).
BlockState initial_blocks(const FieldInput& input, const BlochVector& b0);

BlochVector physical_expectation(InputKind kind, const BlockState& s);
cplx physical_normalization(InputKind kind, const BlockState& s);

}  // namespace qfilter
