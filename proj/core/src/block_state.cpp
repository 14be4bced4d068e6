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

#include "qfilter/block_state.hpp"

#include <algorithm>
#include <cmath>

#include "qfilter/error.hpp"

namespace qfilter {

Operator2 block_matrix(const Block& b) {
  return 0.5 * pauli_compose({b.c, b.x, b.y, b.z});
}

Block block_from_matrix(const Operator2& rho) {
  // Tr[sa rho] for each Pauli component; twice the decomposition coefficients.
  const auto p = pauli_decompose(rho);
  return {2.0 * p.identity, 2.0 * p.x, 2.0 * p.y, 2.0 * p.z};
}

void BlockState::set_zero() {
  std::fill(blocks_.begin(), blocks_.end(), Block{});
}

void BlockState::axpy(double s, const BlockState& other) {
  if (other.blocks_.size() != blocks_.size()) {
    throw InvalidInput("block states of different shape");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    auto& b = blocks_[i];
    const auto& o = other.blocks_[i];
    b.c += s * o.c;
    b.x += s * o.x;
    b.y += s * o.y;
    b.z += s * o.z;
  }
}

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

bool BlockState::all_finite() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) {
    return finite(b.c) && finite(b.x) && finite(b.y) && finite(b.z);
  });
}

double BlockState::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    for (std::size_t k = j; k < n_; ++k) {
      const Block d = (*this)(j, k) - (*this)(k, j).conj();
      worst = std::max({worst, std::abs(d.c), std::abs(d.x), std::abs(d.y), std::abs(d.z)});
    }
  }
  return worst;
}

double max_abs_difference(const BlockState& a, const BlockState& b) {
  if (a.size() != b.size()) {
    throw InvalidInput("block states of different shape");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Block d = a[i] - b[i];
    worst = std::max({worst, std::abs(d.c), std::abs(d.x), std::abs(d.y), std::abs(d.z)});
  }
  return worst;
}

}  // namespace qfilter
