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

// Purity P = 2 Tr[rho^2] - 1 and its rate of change. The general routes work
// with 2x2 matrices for any (S, L, H); the qubit routes are closed forms in the
// Bloch components of the two-level system.

#pragma once

#include <span>
#include <vector>

#include "qfilter/block_state.hpp"
#include "qfilter/field_inputs.hpp"
#include "qfilter/sde_engine.hpp"

namespace qfilter {

inline double purity_bloch(const BlochVector& b) { return b.norm_squared(); }

// dP/dt of the unconditioned state, 4 Re Tr[rho d(rho)/dt] written as traces of
// commutators (vacuum: 4 Tr[[rho, L] rho L^dag]).
double purity_rate_general_unconditioned(const SystemTriple& g, const BlockState& s,
                                         const FieldSample& field);

// Mean dP/dt under homodyne conditioning: the unconditioned rate plus the Ito
// term 2 Tr[(H rho)^2], H rho being the dW coefficient of d(rho).
double purity_rate_general_conditioned_hd(const SystemTriple& g, const BlockState& s,
                                          const FieldSample& field);

// Closed forms for S = I, L = sqrt(gamma) sigma_-, H = (omega / 2) sigma_z.
//   vacuum:        -gamma (P + z^2 + 2 z)
//   single photon: -gamma (P + z11^2 + 2 z11)
//                  + 4 sqrt(gamma) Re{((x11 + i y11) z10 - (x10 + i y10) z11) xi}
//   cat:           -gamma (P + z^2 + 2 C z) + 2 sqrt(gamma) Re sum_ij [...]
double purity_rate_qubit_me(const BlockState& s, const FieldSample& field, double gamma);

// Homodyne closed forms: the ME rate plus |D|^2, D the physical diffusion
// vector. For vacuum this is gamma (P - 1)(x^2 - 1).
double purity_rate_qubit_hd(const BlockState& s, const FieldSample& field, const SystemTriple& g);

// The single-photon homodyne purity rate in its originally published form,
// with the moduli taken literally. Diagnostic only; it agrees with twice the
// vacuum rate when xi = 0 and gamma = 1, and is not used elsewhere.
double purity_rate_photon_hd_published(const BlockState& s, cplx xi, double gamma);

struct PuritySeries {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> standard_error;
};

// Ensemble mean and standard error of per-trajectory purity. Needs at least
// two records on a common time grid (AlignmentError otherwise).
PuritySeries empirical_conditioned_purity(std::span<const TrajectoryRecord> records);

}  // namespace qfilter
