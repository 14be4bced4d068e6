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

// Brute-force evaluation of the operator-valued filter equations for a generic
// (S, L, H). Every pi^{jk}(Y) is computed as Tr[Y rho^{jk}] with 2x2 matrices,
// for X ranging over I, sx, sy, sz. Slow and allocation-heavy; it exists to
// check the closed forms in filters.hpp.

#pragma once

#include "qfilter/filters.hpp"

namespace qfilter {

// Same conventions as the closed forms: drift, diffusion per dW or jump target
// plus rate. Every block is evolved by its own equation, including (0, 1) for
// the single-photon filter.
FieldDecomposition reference_fields(const SystemTriple& g, const BlockState& s,
                                    const FieldSample& field, Detection detection);

}  // namespace qfilter
