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

// Generalized density blocks. Block (j, k) stores the linear functional
// pi^{jk}(X) evaluated on X = I, sx, sy, sz, i.e. the coefficients of
// rho^{jk} = (c I + x sx + y sy + z sz) / 2. Components are complex because the
// off-diagonal blocks are not Hermitian.

#pragma once

#include <cstddef>
#include <vector>

#include "qfilter/qubit_algebra.hpp"

namespace qfilter {

struct Block {
  cplx c;
  cplx x;
  cplx y;
  cplx z;

  Block& operator+=(const Block& o) {
    c += o.c;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  Block& operator-=(const Block& o) {
    c -= o.c;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  Block& operator*=(cplx s) {
    c *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  friend Block operator+(Block a, const Block& b) { return a += b; }
  friend Block operator-(Block a, const Block& b) { return a -= b; }
  friend Block operator*(Block a, cplx s) { return a *= s; }
  friend Block operator*(cplx s, Block a) { return a *= s; }
  friend bool operator==(const Block&, const Block&) = default;

  Block conj() const { return {std::conj(c), std::conj(x), std::conj(y), std::conj(z)}; }

  // pi(X) for X = a0 I + ax sx + ay sy + az sz.
  cplx apply(const PauliCoefficients& p) const {
    return p.identity * c + p.x * x + p.y * y + p.z * z;
  }

  static Block from_bloch(const BlochVector& b, cplx scale = 1.0) {
    return {scale, scale * b.x, scale * b.y, scale * b.z};
  }
};

// (c I + x sx + y sy + z sz) / 2; the Schrodinger-picture form of a block.
Operator2 block_matrix(const Block& b);
Block block_from_matrix(const Operator2& rho);

// Square family of blocks indexed by (j, k) over n branches.
class BlockState {
 public:
  BlockState() = default;
  explicit BlockState(std::size_t branches) : n_(branches), blocks_(branches * branches) {}

  std::size_t branches() const { return n_; }
  std::size_t size() const { return blocks_.size(); }

  Block& operator()(std::size_t j, std::size_t k) { return blocks_[j * n_ + k]; }
  const Block& operator()(std::size_t j, std::size_t k) const { return blocks_[j * n_ + k]; }
  Block& operator[](std::size_t i) { return blocks_[i]; }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }

  std::vector<Block>::iterator begin() { return blocks_.begin(); }
  std::vector<Block>::iterator end() { return blocks_.end(); }
  std::vector<Block>::const_iterator begin() const { return blocks_.begin(); }
  std::vector<Block>::const_iterator end() const { return blocks_.end(); }

  void set_zero();

  // this += s * other
  void axpy(double s, const BlockState& other);

  bool all_finite() const;

  // Largest |pi^{jk}(X) - conj(pi^{kj}(X))| over all pairs and components.
  double hermitian_defect() const;

  friend bool operator==(const BlockState&, const BlockState&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Block> blocks_;
};

double max_abs_difference(const BlockState& a, const BlockState& b);

}  // namespace qfilter
